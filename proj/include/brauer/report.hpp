#pragma once

// JSON serialization of obstruction reports and indecomposability results.

#include "brauer/driver.hpp"
#include "brauer/forms.hpp"

#include <json.hpp>

namespace brauer {

namespace detail {

// Integers are written as JSON numbers when they fit, otherwise as decimal strings.
inline nlohmann::json integer_json(const Integer &x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

inline nlohmann::json spec_json(const BrauerClassSpec &spec) {
  return {{"g", spec.genus()},
          {"period", spec.period()},
          {"form", print_form(spec.context(), spec.coordinates())},
          {"coordinates", spec.coordinates()}};
}

} // namespace detail

inline nlohmann::json to_json(const BrauerClassSpec &spec, const ObstructionReport &rep) {
  nlohmann::json degrees = nlohmann::json::array();
  for (const auto &d : rep.degrees)
    degrees.push_back({{"component", d.component},
                       {"d", d.d},
                       {"djp", to_string(d.djp)},
                       {"refined", to_string(d.refined)},
                       {"hotchkiss", to_string(d.hotchkiss)},
                       {"certificate", d.certificate}});
  return {{"spec", detail::spec_json(spec)},
          {"degrees", degrees},
          {"lower_bound", detail::integer_json(rep.lower_bound)},
          {"cap", detail::integer_json(rep.cap)},
          {"determined", rep.determined}};
}

inline nlohmann::json to_json(const BrauerClassSpec &spec, const Integer &target, const IndecomposabilityResult &res) {
  nlohmann::json out{{"spec", detail::spec_json(spec)},
                     {"target", detail::integer_json(target)},
                     {"verdict", res.indecomposable ? "Indecomposable" : "Inconclusive"},
                     {"group_order", res.group_order},
                     {"candidates", res.stats.candidates},
                     {"certified_by_first", res.stats.certified_by_first},
                     {"certified_by_second", res.stats.certified_by_second},
                     {"uncertified", res.stats.uncertified},
                     {"distinct_classes", res.stats.distinct_classes},
                     {"by_method", res.stats.by_method}};
  if (res.witness) {
    out["witness_index"] = *res.witness_index;
    out["witness"] = print_form(spec.context(), *res.witness);
  }
  return out;
}

} // namespace brauer
