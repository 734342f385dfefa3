#include "stochgraph/families_registry.hpp"

#include "stochgraph/constructions.hpp"

#include <stdexcept>

namespace stochgraph {

namespace {

Rational rational_param(const nlohmann::json& p, const char* key, const char* fallback) {
  if (!p.contains(key)) return parse_rational(fallback);
  const auto& v = p.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  return exact_from_double(v.get<double>());
}

LengthRule length_param(const nlohmann::json& p, const char* fallback) {
  const std::string name = p.value("lengths", std::string(fallback));
  if (name == "pow2") return lengths_powers_of_two();
  if (name == "linear") return lengths_linear();
  throw ConstructionError("unknown length rule: " + name);
}

GapTarget gap_param(const nlohmann::json& p) {
  const std::string name = p.value("g", std::string("2^-n"));
  if (name == "2^-n") return gap_power_of_two();
  if (name == "n^-p") return gap_inverse(p.value("power", std::size_t{2}));
  throw ConstructionError("unknown gap target: " + name);
}

TruncationFamily loop_family(const Rational& w) {
  if (sgn(w) <= 0) throw ConstructionError("loop weight must be positive");
  TruncationFamily f;
  f.name = "loop";
  f.finite_order = 1;
  f.generator = [w](std::size_t) { return DigraphBuilder(1).arc(0, 0, Weight(w)).build(); };
  f.facts.lambda = w.get_d();
  f.facts.lambda_exact = w;
  return f;
}

}  // namespace

std::vector<std::string> family_names() {
  return {"example1", "example2", "prop1", "prop2", "corollary1", "theorem2-fast", "loop"};
}

TruncationFamily make_family(const std::string& name, const nlohmann::json& params) {
  const auto& p = params.is_null() ? nlohmann::json::object() : params;
  if (name == "example1") {
    const Rational a = rational_param(p, "a", "1/2");
    const std::string schedule = p.value("schedule", std::string("power"));
    if (schedule == "power") return build_example1(example1_power(p.value("eps", 0.5), a));
    if (schedule == "geometric") return build_example1(example1_geometric(rational_param(p, "q", "1/2"), a));
    throw ConstructionError("unknown example1 schedule: " + schedule);
  }
  if (name == "example2") {
    Example2Params e;
    if (p.contains("prefix")) {
      for (const auto& x : p.at("prefix")) e.prefix.push_back(parse_rational(x.get<std::string>()));
      e.sorted = p.value("sorted", true);
    } else {
      e.exponent = p.value("exponent", 0.75);
    }
    return build_example2(e);
  }
  if (name == "prop1") {
    Prop1Params q;
    q.length = length_param(p, "pow2");
    const double c = rational_param(p, "target", "1/2").get_d();
    q.target = [c](std::size_t) { return c; };
    // Gains c^{1/l_k} tend to 1 as the lengths grow.
    q.declared_lambda = Rational(1);
    return build_prop1(q);
  }
  if (name == "prop2") {
    auto c = build_prop2(epsilon_power_of_four(p.value("k_max", std::size_t{6})));
    return p.value("gamma", false) ? c.gamma_family : c.family;
  }
  if (name == "corollary1" || name == "theorem2-fast") {
    Corollary1Params q;
    q.length = length_param(p, "linear");
    if (name == "corollary1") return build_corollary1(gap_param(p), q);
    return build_theorem2_fast(gap_param(p), q).family;
  }
  if (name == "loop") return loop_family(rational_param(p, "weight", "1/2"));
  throw ConstructionError("unknown family: " + name);
}

}  // namespace stochgraph
