#pragma once

#include <optional>
#include <string>

#include "sesh/querymodels.hpp"

namespace sesh {

enum class Method {
    tf_first,
    tf_last,
    tf_all,
    nugget_rl2,
    nugget_rl3,
    nugget_rl4,
    qcm,
    oracle,
    grid,
};

const char* method_name(Method method);
std::optional<Method> parse_method(std::string_view name);
bool is_model_method(Method method);  // false for oracle and grid

struct MethodConfig {
    Method method = Method::tf_all;
    NuggetParams nugget;
    QcmParams qcm;
};

// Session-level query model for the model-based methods. Throws for oracle
// and grid, which do not rank by a query model.
QueryModel build_query_model(const Index& index, const Session& session,
                             const MethodConfig& config, const AnchorTexts* anchors = nullptr);

}  // namespace sesh
