#include "sesh/methods.hpp"

#include "sesh/common.hpp"

namespace sesh {

const char* method_name(Method method) {
    switch (method) {
        case Method::tf_first: return "tf_first";
        case Method::tf_last: return "tf_last";
        case Method::tf_all: return "tf_all";
        case Method::nugget_rl2: return "nugget_rl2";
        case Method::nugget_rl3: return "nugget_rl3";
        case Method::nugget_rl4: return "nugget_rl4";
        case Method::qcm: return "qcm";
        case Method::oracle: return "oracle";
        case Method::grid: return "grid";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : {Method::tf_first, Method::tf_last, Method::tf_all, Method::nugget_rl2,
                     Method::nugget_rl3, Method::nugget_rl4, Method::qcm, Method::oracle,
                     Method::grid}) {
        if (name == method_name(m)) return m;
    }
    return std::nullopt;
}

bool is_model_method(Method method) {
    return method != Method::oracle && method != Method::grid;
}

QueryModel build_query_model(const Index& index, const Session& session,
                             const MethodConfig& config, const AnchorTexts* anchors) {
    switch (config.method) {
        case Method::tf_first:
            return tf_session_model(session, TfScope::first_query);
        case Method::tf_last:
            return tf_session_model(session, TfScope::last_query);
        case Method::tf_all:
            return tf_session_model(session, TfScope::all_queries);
        case Method::nugget_rl2: {
            NuggetParams params = config.nugget;
            params.variant = NuggetVariant::RL2;
            return nugget_model(index, session, params, anchors);
        }
        case Method::nugget_rl3: {
            NuggetParams params = config.nugget;
            params.variant = NuggetVariant::RL3;
            return nugget_model(index, session, params, anchors);
        }
        case Method::nugget_rl4: {
            NuggetParams params = config.nugget;
            params.variant = NuggetVariant::RL4;
            return nugget_model(index, session, params, anchors);
        }
        case Method::qcm:
            return qcm_session_model(index, session, config.qcm);
        case Method::oracle:
        case Method::grid:
            break;
    }
    throw Error(std::string("method ") + method_name(config.method) +
                " does not rank by a query model");
}

}  // namespace sesh
