// stochgraph command-line interface.
//
// Exit codes: 0 success or certified verdict, 2 numerical-only verdict,
// 3 unknown/inconclusive verdict, 1 error (including inequality violations).

#include "stochgraph/classification.hpp"
#include "stochgraph/constructions.hpp"
#include "stochgraph/cycles.hpp"
#include "stochgraph/digraph_io.hpp"
#include "stochgraph/families_registry.hpp"
#include "stochgraph/inequalities.hpp"
#include "stochgraph/perron_number.hpp"
#include "stochgraph/spectral.hpp"
#include "stochgraph/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace stochgraph;

namespace {

struct Globals {
  std::string mode = "exact";
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  bool parallel = false;
};

struct Source {
  std::string input;
  std::string family;
  std::string params = "{}";
  std::size_t n = 0;

  void add_to(CLI::App* cmd, bool with_family = true) {
    cmd->add_option("-i,--input", input, "Digraph JSON file");
    if (with_family) {
      cmd->add_option("--family", family, "Built-in family name");
      cmd->add_option("--params", params, "Family parameters as JSON");
      cmd->add_option("--order", n, "Truncation order for a family source");
    }
  }

  TruncationFamily family_or_throw() const {
    if (family.empty()) throw std::invalid_argument("--family is required");
    return make_family(family, json::parse(params));
  }

  WeightedDigraph digraph() const {
    if (!input.empty()) return read_digraph_file(input);
    if (!family.empty()) {
      if (n == 0) throw std::invalid_argument("--order is required with --family");
      return truncate(family_or_throw(), n);
    }
    throw std::invalid_argument("give --input FILE or --family F --order N");
  }
};

class Output {
 public:
  explicit Output(const Globals& g) : g_(g) {}
  void write(const std::string& text) const {
    if (g_.out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(g_.out);
    if (!f) throw std::runtime_error("cannot open " + g_.out);
    f << text;
  }
  void write(const json& j) const { write(j.dump(2) + "\n"); }

 private:
  const Globals& g_;
};

Exec exec_of(const Globals& g) { return g.parallel ? Exec::Parallel : Exec::Serial; }

Mode mode_for(const Globals& g, const WeightedDigraph& d) {
  Mode m = parse_mode(g.mode);
  if (m == Mode::Exact && !d.is_exact()) throw std::invalid_argument("exact mode needs exact (string) weights");
  return m;
}

std::string dec(double x) { return to_decimal_string(x); }

json vertices_json(const std::vector<VertexId>& vs) {
  json a = json::array();
  for (VertexId v : vs) a.push_back(v + 1);
  return a;
}

json cycle_json(const Cycle& c) {
  json j{{"vertices", vertices_json(c.vertices)},
         {"length", c.length()},
         {"weight", dec(c.weight)},
         {"gain", dec(c.gain())}};
  if (c.exact_weight)
    j["exact"] = {{"weight", to_string(*c.exact_weight)}, {"length", c.length()}};
  else
    j["exact"] = nullptr;
  return j;
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(static_cast<std::size_t>(std::stod(item)));
  }
  return out;
}

json relation_list(const std::vector<Violation>& vs) {
  json a = json::array();
  for (const auto& v : vs)
    a.push_back({{"instance", v.instance},
                 {"relation", v.relation},
                 {"lhs", dec(v.lhs)},
                 {"rhs", dec(v.rhs)},
                 {"margin", dec(v.margin)},
                 {"exact_margin", v.exact_margin ? json(*v.exact_margin) : json(nullptr)}});
  return a;
}

json report_json(const InequalityReport& r) {
  json findings = json::array();
  for (const auto& f : r.findings) findings.push_back({{"instance", f.instance}, {"description", f.description}});
  return {{"name", r.name},
          {"mode", std::string(to_string(r.mode))},
          {"instances_tested", r.instances_tested},
          {"comparisons", r.comparisons},
          {"skipped", r.skipped},
          {"violations", relation_list(r.violations)},
          {"min_margin", r.min_margin ? json(dec(*r.min_margin)) : json(nullptr)},
          {"min_margin_relation", r.min_margin_relation},
          {"min_margin_exact", r.min_margin_exact ? json(to_string(*r.min_margin_exact)) : json(nullptr)},
          {"findings", findings},
          {"agreement_checked", r.agreement_checked},
          {"agreement_failures", r.agreement_failures},
          {"notes", r.notes},
          {"passed", r.passed()}};
}

json verdict_json(const RecurrenceVerdict& v) {
  json evidence;
  if (auto* c = std::get_if<PruittCertificate>(&v.evidence)) {
    evidence = {{"type", "pruitt-vector"},
                {"strict_vertex", c->strict_vertex + 1},
                {"scope", c->scope},
                {"verified_rows", c->verified_rows},
                {"length", c->xi.size()}};
    const bool ones = c->exact_xi && std::all_of(c->exact_xi->begin(), c->exact_xi->end(),
                                                 [](const Rational& x) { return x == 1; });
    if (ones) {
      evidence["xi"] = "all-ones";
    } else if (c->exact_xi) {
      json xi = json::array();
      for (std::size_t i = 0; i < std::min<std::size_t>(c->exact_xi->size(), 64); ++i)
        xi.push_back(to_string((*c->exact_xi)[i]));
      evidence["xi_head"] = xi;
    }
  } else if (auto* s = std::get_if<DivergingSeries>(&v.evidence)) {
    json sums = json::array();
    for (auto [p, g] : s->partial_sums) sums.push_back({{"p", p}, {"sum", dec(g)}});
    evidence = {{"type", "diverging-series"},
                {"vertex", s->vertex + 1},
                {"n", s->n},
                {"partial_sums", sums},
                {"exact_last", s->exact_last ? json(to_string(*s->exact_last)) : json(nullptr)},
                {"growth_factor", dec(s->growth_factor)},
                {"slope_ratio", dec(s->slope_ratio)},
                {"trend", s->trend}};
  } else if (auto* y = std::get_if<CyrStructural>(&v.evidence)) {
    evidence = {{"type", "cyr-structural"}, {"sct_size", y->sct_size.to_string()}, {"ell_max", y->ell_max.to_string()}};
  } else {
    evidence = {{"type", "none"}};
  }
  return {{"verdict", std::string(to_string(v.verdict))},
          {"confidence", std::string(to_string(v.confidence))},
          {"lambda", dec(v.lambda)},
          {"lambda_method", v.lambda_method},
          {"evidence", evidence},
          {"notes", v.notes}};
}

json family_json(const TruncationFamily& f) {
  json meta = json::object();
  if (f.metadata.transversal) meta["transversal"] = vertices_json(*f.metadata.transversal);
  if (auto s = f.metadata.effective_sct_size()) meta["sct_size"] = s->to_string();
  if (f.metadata.ell_max) meta["ell_max"] = f.metadata.ell_max->to_string();
  if (f.metadata.ell_min) meta["ell_min"] = *f.metadata.ell_min;
  json facts = json::object();
  if (f.facts.lambda) facts["lambda"] = dec(*f.facts.lambda);
  if (f.facts.lambda_exact) facts["lambda_exact"] = to_string(*f.facts.lambda_exact);
  facts["all_ones_pruitt"] = f.facts.all_ones_pruitt;
  return {{"family", f.name},
          {"finite_order", f.finite_order ? json(*f.finite_order) : json(nullptr)},
          {"metadata", meta},
          {"facts", facts},
          {"notes", f.notes}};
}

json prop2_json(const Prop2Construction& c) {
  json cycles = json::array();
  for (const auto& k : c.cycles)
    cycles.push_back({{"k", k.k},
                      {"length", k.length},
                      {"previous_total", k.previous_total},
                      {"eps", to_string(k.eps)},
                      {"inequality_1", {{"holds", k.inequality_holds}, {"method", k.inequality_method}}},
                      {"gain_bound", {{"holds", k.gain_bound_holds}, {"method", k.gain_bound_method}}},
                      {"log_gain", {dec(k.log_gain.first), dec(k.log_gain.second)}}});
  json out = json::array();
  for (const auto& o : c.out_weights)
    out.push_back({{"description", o.description},
                   {"k", o.k},
                   {"out_weight", to_string(o.out_weight)},
                   {"bound", to_string(o.bound)},
                   {"within", o.out_weight <= o.bound}});
  return {{"schedule", c.schedule.name},
          {"cycles", cycles},
          {"out_weights", out},
          {"gamma_weighting", std::string(to_string(c.gamma_tag))}};
}

int exit_for(const RecurrenceVerdict& v) {
  if (v.verdict == Verdict::Unknown) return 3;
  return v.confidence == Confidence::Certified ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of substochastic weightings of digraphs and their infinite families"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--mode", g.mode, "Arithmetic: exact | float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--seed", g.seed, "Seed for random instance streams");
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--format", g.format, "Output format: json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--parallel", g.parallel, "Use the OpenMP kernels");
  Output out(g);
  int code = 0;

  // cycles -----------------------------------------------------------------
  auto* cycles = app.add_subcommand("cycles", "Cycle enumeration, transversals and gains");
  cycles->require_subcommand(1);
  Source cyc_src;
  std::size_t max_len = unlimited, max_count = unlimited;
  auto* enumerate = cycles->add_subcommand("enumerate", "List simple cycles");
  cyc_src.add_to(enumerate);
  enumerate->add_option("--max-len", max_len, "Longest cycle to list");
  enumerate->add_option("--max-count", max_count, "Stop after this many cycles");
  enumerate->callback([&] {
    auto d = cyc_src.digraph();
    bool truncated = false;
    json list = json::array();
    for (const auto& c : list_cycles(d, {max_len, max_count}, &truncated)) list.push_back(cycle_json(c));
    out.write(json{{"order", d.order()}, {"count", list.size()}, {"truncated", truncated}, {"cycles", list}});
  });
  auto* fvs = cycles->add_subcommand("fvs", "Minimum cycle transversal");
  cyc_src.add_to(fvs);
  std::size_t fvs_budget = 2'000'000;
  fvs->add_option("--budget", fvs_budget, "Branch-and-bound node budget");
  fvs->callback([&] {
    auto d = cyc_src.digraph();
    auto w = min_cycle_transversal(d, fvs_budget);
    out.write(json{{"vertices", vertices_json(w.vertices)},
                   {"size", w.size()},
                   {"optimality", w.optimality == Optimality::Exact ? "exact" : "upper-bound"},
                   {"nodes", w.nodes},
                   {"packing_size", disjoint_cycle_packing(d).size()}});
  });
  auto* om = cycles->add_subcommand("omega", "Largest gain over cycles of length <= n");
  cyc_src.add_to(om);
  std::size_t omega_n = 0;
  std::string proper = "auto";
  om->add_option("--n", omega_n, "Length bound")->required();
  om->add_option("--proper-only", proper, "auto | true | false")->check(CLI::IsMember({"auto", "true", "false"}));
  om->callback([&] {
    auto d = cyc_src.digraph();
    bool p = proper == "auto" ? is_single_cycle(d) : proper == "true";
    auto r = omega(d, omega_n, p);
    out.write(json{{"n", omega_n},
                   {"proper_only", p},
                   {"omega", dec(r.gain())},
                   {"cycle", r.best ? cycle_json(*r.best) : json(nullptr)}});
  });

  // spectral ---------------------------------------------------------------
  auto* spectral = app.add_subcommand("spectral", "Perron roots, characteristic polynomials, ladders");
  spectral->require_subcommand(1);
  Source sp_src;
  double tol = 1e-12;
  auto* perron = spectral->add_subcommand("perron", "Perron root with a Collatz-Wielandt bracket");
  sp_src.add_to(perron);
  perron->add_option("--tol", tol, "Relative bracket width");
  perron->callback([&] {
    auto d = sp_src.digraph();
    PerronOptions po;
    po.tol = tol;
    po.exec = exec_of(g);
    auto r = perron_root_report(d, po);
    json j{{"perron_root", dec(r.value)},
           {"lower", dec(r.lower)},
           {"upper", dec(r.upper)},
           {"iterations", r.iterations},
           {"converged", r.converged}};
    if (mode_for(g, d) == Mode::Exact) {
      ExactPerron e(d);
      j["exact_bracket"] = {to_string(e.lower()), to_string(e.upper())};
    }
    out.write(j);
  });
  auto* charpoly = spectral->add_subcommand("charpoly", "det(I - zA) coefficients");
  sp_src.add_to(charpoly);
  std::string method = "auto";
  charpoly->add_option("--method", method, "coates | elimination | auto")
      ->check(CLI::IsMember({"coates", "elimination", "auto"}));
  charpoly->callback([&] {
    auto d = sp_src.digraph();
    const Mode m = mode_for(g, d);
    json coeffs = json::array();
    long r = 0;
    std::string used = method;
    if (method == "auto") {
      auto rep = spectral_report(d, m);
      used = rep.charpoly_method;
      if (rep.exact_charpoly)
        for (const auto& c : rep.exact_charpoly->coefficients()) coeffs.push_back(to_string(c));
      else
        for (double c : rep.charpoly.coefficients()) coeffs.push_back(dec(c));
      r = rep.nonzero_eig_count;
    } else if (m == Mode::Exact) {
      auto p = method == "coates" ? coates_charpoly<Rational>(d) : elimination_charpoly<Rational>(d);
      for (const auto& c : p.coefficients()) coeffs.push_back(to_string(c));
      r = nonzero_eigenvalue_count(p);
    } else {
      auto p = method == "coates" ? coates_charpoly<double>(d) : elimination_charpoly<double>(d);
      for (double c : p.coefficients()) coeffs.push_back(dec(c));
      r = nonzero_eigenvalue_count(p);
    }
    out.write(json{{"method", used},
                   {"mode", std::string(to_string(m))},
                   {"coefficients", coeffs},
                   {"nonzero_eigenvalue_count", r}});
  });
  auto* ladder = spectral->add_subcommand("ladder", "lambda_n over truncation orders");
  Source lad_src;
  std::string n_list, ladder_mode = "leading";
  ladder->add_option("--family", lad_src.family, "Built-in family name")->required();
  ladder->add_option("--params", lad_src.params, "Family parameters as JSON");
  ladder->add_option("--n-list", n_list, "Comma-separated orders")->required();
  ladder->add_option("--ladder-mode", ladder_mode, "leading | sup_exact")
      ->check(CLI::IsMember({"leading", "sup_exact"}));
  ladder->callback([&] {
    auto f = lad_src.family_or_throw();
    LadderOptions lo;
    lo.mode = ladder_mode == "leading" ? LadderMode::Leading : LadderMode::SupExact;
    lo.exec = exec_of(g);
    auto ns = parse_list(n_list);
    auto s = lambda_ladder(f, ns, lo);
    if (g.format == "csv") {
      std::ostringstream o;
      o << "n,lambda_n,gap_to_limit\n";
      for (auto [n, v] : s.values)
        o << n << ',' << dec(v) << ',' << (f.facts.lambda ? dec(*f.facts.lambda - v) : "") << '\n';
      out.write(o.str());
    } else {
      json rows = json::array();
      for (auto [n, v] : s.values)
        rows.push_back({{"n", n},
                        {"lambda_n", dec(v)},
                        {"gap_to_limit", f.facts.lambda ? json(dec(*f.facts.lambda - v)) : json(nullptr)},
                        {"produced_by", std::string(to_string(s.produced_by.at(n)))}});
      out.write(json{{"family", f.name},
                     {"rows", rows},
                     {"limit_estimate", dec(s.limit_estimate)},
                     {"limit_method", std::string(to_string(s.limit_method))}});
    }
  });

  // classify ---------------------------------------------------------------
  auto* classify_cmd = app.add_subcommand("classify", "Transience / recurrence verdict with evidence");
  Source cl_src;
  cl_src.add_to(classify_cmd);
  ClassifyOptions co;
  std::size_t vertex1 = 0;
  classify_cmd->add_option("--n-max", co.n_max, "Largest truncation used");
  classify_cmd->add_option("--p-max", co.p_max, "Green series length");
  classify_cmd->add_option("--vertex", vertex1, "Return vertex (1-based)");
  classify_cmd->callback([&] {
    TruncationFamily f;
    if (!cl_src.input.empty()) {
      auto d = std::make_shared<WeightedDigraph>(read_digraph_file(cl_src.input));
      f.name = cl_src.input;
      f.finite_order = d->order();
      f.generator = [d](std::size_t n) {
        std::vector<VertexId> keep;
        for (VertexId v = 0; v < std::min(n, d->order()); ++v) keep.push_back(v);
        return d->induced(keep);
      };
    } else {
      f = cl_src.family_or_throw();
    }
    if (vertex1 > 0) co.vertex = vertex1 - 1;
    co.exec = exec_of(g);
    auto v = classify(f, co);
    out.write(verdict_json(v));
    code = exit_for(v);
  });

  // construct --------------------------------------------------------------
  auto* construct = app.add_subcommand("construct", "Build a named construction");
  std::string cname, cparams = "{}";
  std::size_t emit = 0;
  construct->add_option("name", cname, "prop1 | prop2 | corollary1 | example1 | example2 | theorem2-fast | loop")
      ->required();
  construct->add_option("--params", cparams, "Construction parameters as JSON");
  construct->add_option("--emit-truncation", emit, "Write the order-N truncation as digraph JSON");
  construct->callback([&] {
    json p = json::parse(cparams);
    auto f = make_family(cname, p);
    if (emit > 0) {
      out.write(digraph_to_json(truncate(f, emit)));
      return;
    }
    json j = family_json(f);
    if (cname == "prop2") j["construction"] = prop2_json(build_prop2(epsilon_power_of_four(p.value("k_max", std::size_t{6}))));
    out.write(j);
  });

  // verify -----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Check an inequality suite on seeded random instances");
  std::string suite;
  SuiteOptions so;
  verify->add_option("suite", suite,
                     "boyle-handelman | ksv | lemma-a1 | lemma-a2 | a1-product | sigma-k | zeta | conjecture | prop3")
      ->required();
  verify->add_option("--count", so.count, "Number of instances");
  verify->add_option("--order-max", so.instances.order_max, "Largest instance order");
  verify->add_option("--order-min", so.instances.order_min, "Smallest instance order");
  verify->add_option("--agreement", so.agreement_instances, "Instances re-run in float mode (exact runs)");
  verify->callback([&] {
    so.instances.seed = g.seed;
    so.mode = parse_mode(g.mode);
    so.exec = exec_of(g);
    auto r = run_suite(parse_suite(suite), so);
    out.write(report_json(r));
    if (!r.passed()) code = 1;
  });

  // sweep ------------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "Per-n table of lambda_n, omega_n and transversal size");
  Source sw_src;
  std::string sw_list, ops = "lambda,omega,fvs";
  bool progress = false;
  sweep->add_option("--family", sw_src.family, "Built-in family name")->required();
  sweep->add_option("--params", sw_src.params, "Family parameters as JSON");
  sweep->add_option("--n-list", sw_list, "Comma-separated strictly increasing orders");
  sweep->add_option("--ops", ops, "Subset of lambda,omega,fvs");
  sweep->add_flag("--progress", progress, "Progress on standard error");
  sweep->callback([&] {
    auto f = sw_src.family_or_throw();
    SweepSpec spec;
    spec.n_grid = parse_list(sw_list);
    spec.lambda = ops.find("lambda") != std::string::npos;
    spec.omega = ops.find("omega") != std::string::npos;
    spec.fvs = ops.find("fvs") != std::string::npos;
    spec.mode = parse_mode(g.mode);
    spec.seed = g.seed;
    spec.exec = exec_of(g);
    spec.progress = progress;
    auto r = run_sweep(f, spec);
    if (g.format == "csv")
      out.write(sweep_csv(r));
    else
      out.write(sweep_json(r));
  });

  // fit --------------------------------------------------------------------
  auto* fit = app.add_subcommand("fit", "Fit a power-law decay exponent to (n, gap) data");
  std::string fit_input, column = "gap_to_limit";
  std::size_t first = 0, last = 0;
  bool log_corr = false;
  fit->add_option("-i,--input", fit_input, "Sweep CSV/JSON or two-column n,gap CSV")->required();
  fit->add_option("--column", column, "Gap column of a sweep CSV");
  fit->add_option("--first", first, "First row of the window (0-based)");
  fit->add_option("--last", last, "One past the last row (0 = all)");
  fit->add_flag("--log-correction", log_corr, "Also fit a log log n term");
  fit->callback([&] {
    std::ifstream in(fit_input);
    if (!in) throw std::runtime_error("cannot open " + fit_input);
    std::string line;
    std::vector<std::string> header;
    std::vector<std::pair<double, double>> series;
    std::size_t col = 1;
    if (in >> std::ws; in.peek() == '{') {
      // JSON sweep output: rows[].n and rows[].<column>.
      json doc = json::parse(in);
      for (const auto& row : doc.at("rows")) {
        if (!row.contains(column)) throw std::invalid_argument("no column " + column);
        if (row[column].is_number()) series.emplace_back(row["n"].get<double>(), row[column].get<double>());
      }
    }
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string c;
      while (std::getline(ss, c, ',')) cells.push_back(c);
      if (header.empty() && !cells.empty() && !std::isdigit(static_cast<unsigned char>(cells[0][0]))) {
        header = cells;
        auto it = std::find(header.begin(), header.end(), column);
        if (it == header.end() && header.size() != 2) throw std::invalid_argument("no column " + column);
        col = it == header.end() ? 1 : static_cast<std::size_t>(it - header.begin());
        continue;
      }
      if (cells.size() <= col || cells[col].empty()) continue;
      series.emplace_back(std::stod(cells[0]), std::stod(cells[col]));
    }
    auto r = fit_decay(series, first, last == 0 ? series.size() : last, log_corr);
    json j{{"slope", dec(r.slope)},
           {"slope_ci", dec(r.slope_ci)},
           {"intercept", dec(r.intercept)},
           {"points", r.points},
           {"residual_rms", dec(r.residual_rms)}};
    j["log_coefficient"] = r.log_coefficient ? json(dec(*r.log_coefficient)) : json(nullptr);
    j["log_coefficient_ci"] = r.log_coefficient_ci ? json(dec(*r.log_coefficient_ci)) : json(nullptr);
    out.write(j);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}
