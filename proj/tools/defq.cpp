// Command-line front end. Every subcommand reads a JSON input, runs the
// corresponding exact checks and prints a JSON (or flat text) report.
// Exit status: 0 all checks pass, 1 a mathematical check failed, 2 bad input.
#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <map>

#include "defq/deligne.hpp"
#include "defq/descent.hpp"
#include "defq/fedosov.hpp"
#include "defq/gerbe.hpp"
#include "defq/hochschild.hpp"
#include "defq/io.hpp"
#include "defq/models.hpp"
#include "defq/sullivan.hpp"
#include "defq/sweeps.hpp"

using namespace defq;
using io::Json;

namespace {

struct Options {
  std::string input;
  std::uint64_t seed = 1;
  int trunc_hbar = -1;    // N
  int trunc_degree = -1;  // D, D_t or the Weyl weight cap, per command
  std::string format = "json";
  int sweep = 0;
  std::string dgla;
  int n = 1;
  int hbar_order = -1;
  int y_degree = -1;
};

Json load(const Options& o) {
  if (o.input.empty()) throw UsageError("an input file is required (or --sweep K)");
  return io::read_file(o.input);
}

const Json& field(const Json& j, const std::string& key) {
  if (!j.is_object()) throw ParseError("", "expected an object");
  if (!j.contains(key)) throw ParseError("/" + key, "missing field");
  return j.at(key);
}

Json sweep_json(const std::vector<SweepReport>& reports) {
  Json suites = Json::array();
  bool ok = true;
  for (const auto& r : reports) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
      Json e{{"name", c.name}, {"samples", c.samples}, {"passed", c.passed}};
      if (!c.ok()) e["first_failure"] = c.first_failure;
      checks.push_back(e);
    }
    suites.push_back(Json{{"suite", r.suite}, {"ok", r.ok()}, {"checks", checks}});
    ok = ok && r.ok();
  }
  return Json{{"ok", ok}, {"suites", suites}};
}

Json defect_json(const GradedElement& d) { return d.is_zero() ? Json("0") : io::to_json(d); }

std::vector<int> nonzero_indices(const GradedElement& x) {
  std::vector<int> out;
  for (int i = 0; i < x.dgla().total_dim(); ++i)
    if (!x[i].is_zero()) out.push_back(i);
  return out;
}

// ------------------------------------------------------------ commands

Json cmd_validate_dgla(const Options& o) {
  if (o.sweep) return sweep_json({sweep_dgla_fixtures(), sweep_hochschild(o.seed, o.sweep)});
  DglaPtr L = o.dgla.empty() ? io::parse_dgla(load(o)) : io::builtin_dgla(o.dgla);
  ValidationReport r = validate_dgla(*L);
  Json out{{"dgla", L->name()}, {"lo", L->lo()}, {"dims", L->dims()}, {"ok", r.ok}};
  if (!r.ok) out["witness"] = io::to_json(r);
  return out;
}

Json cmd_mc_check(const Options& o) {
  if (o.sweep) return sweep_json({sweep_mc_associativity(o.seed, o.sweep)});
  Json j = load(o);
  if (j.contains("algebra")) {
    AlgebraPresentation a = io::parse_algebra(j["algebra"], "/algebra");
    HochschildCochain lambda = io::parse_cochain(field(j, "cochain"), "/cochain");
    if (lambda.dim() != a.dim() || lambda.arity() != 2)
      throw ParseError("/cochain", "expected a two-cochain on the algebra");
    HochschildCochain def = hochschild_mc_defect(a, lambda);
    bool assoc = deformed_table_is_associative(a, lambda);
    Json out{{"kind", "hochschild"}, {"ok", def.is_zero()},
             {"defect", def.is_zero() ? Json("0") : io::to_json(def)},
             {"deformed_product_associative", assoc}};
    if (!def.is_zero()) {
      // first input triple where the defect is nonzero
      for (size_t in = 0; in < def.num_inputs() && !out.contains("witness"); ++in)
        if (!def.input_is_zero(in)) out["witness"] = def.args_of(in);
    }
    return out;
  }
  DglaPtr L = io::parse_dgla(field(j, "dgla"), "/dgla");
  GradedElement x = io::parse_element(field(j, "element"), L, "/element");
  if (!x.is_homogeneous(1)) throw ParseError("/element", "expected a degree-1 element");
  GradedElement def = mc_defect(x);
  bool mc = is_maurer_cartan(x);
  Json out{{"kind", "dgla"}, {"dgla", L->name()}, {"ok", mc}, {"defect", defect_json(def)},
           {"in_maximal_ideal", x.in_maximal_ideal()}};
  if (!mc) out["witness"] = def.is_zero() ? std::vector<int>{} : nonzero_indices(def);
  return out;
}

Json cmd_gauge(const Options& o) {
  if (o.sweep) return sweep_json({sweep_gauge(o.seed, o.sweep)});
  Json j = load(o);
  DglaPtr L = io::parse_dgla(field(j, "dgla"), "/dgla");
  GradedElement X = io::parse_element(field(j, "X"), L, "/X");
  GradedElement lambda = io::parse_element(field(j, "lambda"), L, "/lambda");
  if (!X.is_homogeneous(0) || !X.in_maximal_ideal())
    throw ParseError("/X", "expected a degree-0 element in the maximal ideal");
  GradedElement image = gauge_apply(X, lambda);
  bool src = is_maurer_cartan(lambda), dst = is_maurer_cartan(image);
  Json out{{"ok", src && dst}, {"source_is_mc", src}, {"image_is_mc", dst},
           {"image", io::to_json(image)}};
  if (!(src && dst)) out["witness"] = nonzero_indices(mc_defect(src ? image : lambda));
  return out;
}

CosimplicialDgla descent_model(const Json& j) {
  std::string name = field(j, "model").is_string() ? j["model"].get<std::string>() : "";
  int indices = j.value("indices", 2), cap = j.value("cap", 4);
  if (indices < 1 || indices > 3) throw ParseError("/indices", "expected 1..3 indices");
  if (cap < 3 || cap > 4) throw ParseError("/cap", "expected a cap of 3 or 4");
  if (name == "abelian") return tuple_cech_model(make_cdga_model(), indices, cap);
  if (name == "heisenberg") return tuple_cech_model(make_heisenberg_model(), indices, cap);
  throw ParseError("/model", "expected \"abelian\" or \"heisenberg\"");
}

DescentDatum parse_datum(const CosimplicialDgla& c, const Json& j, const std::string& path) {
  DescentDatum D;
  D.lambda = io::parse_element(field(j, "lambda"), c.level(0), path + "/lambda");
  D.g = io::parse_element(field(j, "g"), c.level(1), path + "/g");
  D.t = io::parse_element(field(j, "t"), c.level(2), path + "/t");
  return D;
}

DescentIso parse_iso(const CosimplicialDgla& c, const Json& j, const std::string& path) {
  return DescentIso{io::parse_element(field(j, "h"), c.level(0), path + "/h"),
                    io::parse_element(field(j, "s"), c.level(1), path + "/s")};
}

Json cmd_descent_check(const Options& o) {
  if (o.sweep) return sweep_json({sweep_descent(o.seed, o.sweep)});
  Json j = load(o);
  CosimplicialDgla c = descent_model(j);
  DescentDatum D = parse_datum(c, field(j, "datum"), "/datum");
  DescentReport r = descent_verify(c, D);
  Json out = io::to_json(r);
  if (!r.ok)
    for (const auto& cond : r.conditions)
      if (!cond.ok) {
        out["witness"] = Json{{"condition", cond.name}, {"order", cond.first_failing_order}};
        break;
      }
  return out;
}

Json cmd_deviation(const Options& o) {
  if (o.sweep) return sweep_json({sweep_deviation(o.seed, o.sweep)});
  Json j = load(o);
  CosimplicialDgla c = descent_model(j);
  DescentDatum D = parse_datum(c, field(j, "datum"), "/datum");
  int order = j.value("order", 0);
  std::string kind = "descent";
  DeviationResult r;
  auto pick = [&](const std::function<DeviationResult(int)>& f) {
    if (order > 0) return f(order);
    // default: the first failing order
    DeviationResult probe = f(1);
    return probe.precondition_ok || probe.first_failing_order < 1 ? probe : f(probe.first_failing_order);
  };
  if (j.contains("iso")) {
    DescentDatum to = parse_datum(c, field(j, "to"), "/to");
    DescentIso iso = parse_iso(c, j["iso"], "/iso");
    if (j.contains("other")) {
      kind = "two-iso";
      DescentIso other = parse_iso(c, j["other"], "/other");
      DescentTwoIso tw{io::parse_element(field(j, "r"), c.level(0), "/r")};
      r = pick([&](int n) { return two_iso_deviation_cocycle(c, D, to, iso, other, tw, n); });
    } else {
      kind = "iso";
      r = pick([&](int n) { return iso_deviation_cocycle(c, D, to, iso, n); });
    }
  } else {
    r = pick([&](int n) { return deviation_cocycle(c, D, n); });
  }
  Json out{{"kind", kind}, {"order", r.order}, {"precondition_ok", r.precondition_ok},
           {"first_failing_order", r.first_failing_order}, {"closed", r.closed},
           {"ok", r.precondition_ok && r.closed}};
  if (r.precondition_ok) out["cochain"] = io::to_json(r.cochain);
  if (!r.precondition_ok) out["witness"] = Json{{"first_failing_order", r.first_failing_order}};
  else if (!r.closed) out["witness"] = io::to_json(total_differential(c, r.cochain));
  return out;
}

Json cmd_totalize(const Options& o) {
  if (o.sweep) return sweep_json({sweep_totalization(o.seed, o.sweep)});
  Json j = o.dgla.empty() ? load(o) : Json{{"dgla", o.dgla}};
  DglaPtr B = io::parse_dgla(field(j, "dgla"), "/dgla");
  int levels = j.value("levels", 2);
  int poly = o.trunc_degree > 0 ? o.trunc_degree : j.value("poly_degree", 4);
  if (levels < 0 || levels > 3) throw ParseError("/levels", "expected 0..3");
  if (poly < 1 || poly > 6) throw ParseError("/poly_degree", "expected 1..6");
  CosimplicialDgla c = constant_cosimplicial(B, levels);
  Totalization T = totalize(c, levels, poly);
  bool compatible = true;
  for (const auto& [deg, fams] : T.basis)
    for (const auto& f : fams) compatible = compatible && tot_compatible(c, f).ok;
  int flat = tot_closed_dimension(T, 0);
  int kernel = B->dim(0) - rank(B->differential_block(0));
  Json out{{"dgla", B->name()}, {"levels", levels}, {"poly_degree", poly},
           {"tot_lo", T.presentation->lo()}, {"tot_dims", T.presentation->dims()},
           {"degree0_closed", flat}, {"degree0_kernel", kernel},
           {"dropped_brackets", T.dropped_brackets}, {"families_compatible", compatible},
           {"ok", compatible && flat == kernel}};
  if (flat != kernel) out["witness"] = Json{flat, kernel};
  return out;
}

Json stack_report(const StackReport& r) {
  Json out = io::to_json(r);
  if (const StackCheck* f = r.first_failure())
    out["witness"] = Json{{"check", f->name}, {"indices", f->witness}};
  return out;
}

Json cmd_stack_check(const Options& o) {
  if (o.sweep) return sweep_json({sweep_stack(o.seed, o.sweep)});
  return stack_report(validate_stack(io::parse_stack(load(o))));
}

Json cmd_twisted_matrix(const Options& o) {
  if (o.sweep) return sweep_json({sweep_twisted(o.seed, o.sweep, std::max(1, o.sweep / 2))});
  Json j = load(o);
  StackDatum S = io::parse_stack(field(j, "stack"), "/stack");
  std::vector<int> simplex = field(j, "simplex").get<std::vector<int>>();
  int sigma = S.nerve.index_of(simplex);
  if (sigma < 0) throw ParseError("/simplex", "not a simplex of the nerve");
  AlgebraPresentation tw = twisted_matrix_build(S, sigma);
  std::vector<int> w = tw.associativity_witness();
  bool valid = validate_stack(S).ok;
  Json out{{"dim", tw.dim()}, {"associative", w.empty()}, {"stack_datum", valid},
           {"ok", w.empty()}, {"algebra", io::to_json(tw)}};
  if (!w.empty()) {
    Json decoded = Json::array();
    TwistedLayout lay = twisted_layout(S, sigma);
    for (int b : w) decoded.push_back(lay.decode(b));
    out["witness"] = Json{{"basis", w}, {"slots", decoded}};
  }
  return out;
}

Json cmd_barycentric(const Options& o) {
  if (o.sweep) return sweep_json({sweep_barycentric(o.seed, o.sweep)});
  ChainDatum C = io::parse_chain(load(o));
  BarycentricResult r = barycentric_reconstruct(C);
  Json out{{"coherence", stack_report(r.coherence)}};
  bool ok = r.coherence.ok && r.datum.has_value();
  if (r.datum) {
    StackReport v = validate_stack(*r.datum);
    out["datum"] = io::to_json(*r.datum);
    out["datum_validation"] = stack_report(v);
    ok = ok && v.ok;
    if (!v.ok) out["witness"] = stack_report(v)["witness"];
  }
  if (!r.coherence.ok) out["witness"] = stack_report(r.coherence)["witness"];
  out["ok"] = ok;
  return out;
}

Json class_json(const CharacteristicClass& cc) {
  Json out{{"central", cc.central}, {"closed", cc.closed}};
  if (cc.central) out["theta"] = io::to_json(cc.series);
  else out["theta_form"] = io::to_json(cc.theta);
  return out;
}

Json cmd_fedosov(const Options& o) {
  if (o.sweep) return sweep_json({sweep_fedosov(o.seed, o.sweep), sweep_moyal(o.seed)});
  int N = o.hbar_order >= 0 ? o.hbar_order : (o.trunc_hbar >= 0 ? o.trunc_hbar : 3);
  int D = o.y_degree >= 0 ? o.y_degree : (o.trunc_degree >= 0 ? o.trunc_degree : 6);
  if (o.n < 1 || o.n > 2) throw UsageError("--n must be 1 or 2");
  if (N < 0 || N > 4 || D < 2 || D > 8) throw UsageError("truncation out of range");
  SymplecticModel m = SymplecticModel::standard(o.n);
  CentralSeries target{m.omega, {}};
  WeylTrunc t{N, D, 0};
  WeylForm seed;
  if (!o.input.empty()) {
    Json j = load(o);
    if (j.contains("omega")) m = io::parse_model(j, "");
    target.leading = m.omega;
    if (j.contains("target")) target = io::parse_central_series(j["target"], "/target");
    if (j.contains("max_base")) t.max_base = j["max_base"].get<int>();
    if (j.contains("seed")) seed = io::parse_weyl(j["seed"], "/seed");
  }
  FedosovPair p = fedosov_solve(m, target, t, seed);
  FlatnessReport fr = fedosov_verify(p);
  CharacteristicClass cc = characteristic_class(p);
  bool leading = cc.central && cc.series.leading == m.omega;
  Json out{{"n", m.n}, {"trunc", io::to_json(t)}, {"iterations", p.iterations},
           {"flat", fr.ok}, {"basis_checked", fr.checked}, {"class", class_json(cc)},
           {"leading_equals_omega", leading}, {"pair", io::to_json(p)},
           {"ok", fr.ok && cc.central && cc.closed && leading}};
  if (!fr.ok) {
    WeylForm w = WeylForm::monomial(m.n, fr.witness);
    out["witness"] = Json{{"failure", fr.failure}, {"basis_element", io::to_json(w)}};
  }
  return out;
}

Json cmd_char_class(const Options& o) {
  if (o.sweep) return sweep_json({sweep_char_class(o.seed, o.sweep)});
  FedosovPair p = io::parse_fedosov_pair(load(o));
  FlatnessReport fr = fedosov_verify(p);
  CharacteristicClass cc = characteristic_class(p);
  Json out = class_json(cc);
  out["flat"] = fr.ok;
  out["ok"] = fr.ok && cc.central && cc.closed;
  if (!fr.ok) out["witness"] = Json{{"failure", fr.failure}, {"basis_element", io::to_json(WeylForm::monomial(p.model.n, fr.witness))}};
  return out;
}

Json cmd_rw(const Options& o) {
  if (o.sweep) return sweep_json({sweep_rw(o.seed, o.sweep)});
  Json j = load(o);
  SymplecticModel m = io::parse_model(field(j, "model"), "/model");
  Tensor4 R = io::parse_tensor4(field(j, "R"), "/R");
  if (int(R.size()) != m.dim()) throw ParseError("/R/dim", "does not match the model");
  Json out{{"rw", io::to_json(rw_form(R, m))}, {"ok", true}};
  if (j.contains("alpha") || j.contains("beta")) {
    Matrix a = io::parse_matrix(field(j, "alpha"), "/alpha");
    Matrix b = io::parse_matrix(field(j, "beta"), "/beta");
    out["pairing"] = io::to_json(omega_pairing(a, b, m));
  }
  return out;
}

void print(const Json& report, const std::string& format) {
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  for (const auto& [k, v] : report.items()) std::cout << k << ": " << v.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for truncated deformation-theoretic models"};
  app.require_subcommand(1);
  Options o;
  std::map<std::string, std::function<Json(const Options&)>> commands = {
      {"validate-dgla", cmd_validate_dgla}, {"mc-check", cmd_mc_check},
      {"gauge", cmd_gauge},                 {"descent-check", cmd_descent_check},
      {"deviation", cmd_deviation},         {"totalize", cmd_totalize},
      {"stack-check", cmd_stack_check},     {"twisted-matrix", cmd_twisted_matrix},
      {"barycentric", cmd_barycentric},     {"fedosov", cmd_fedosov},
      {"char-class", cmd_char_class},       {"rw", cmd_rw}};
  std::map<std::string, std::string> help = {
      {"validate-dgla", "check the DGLA axioms of a presentation"},
      {"mc-check", "Maurer-Cartan defect of an element or a Hochschild deformation"},
      {"gauge", "apply a gauge transformation to a Maurer-Cartan element"},
      {"descent-check", "verify the four descent conditions"},
      {"deviation", "leading deviation cochain of near-descent data and its closedness"},
      {"totalize", "totalization of a constant cosimplicial DGLA"},
      {"stack-check", "validate stack data"},
      {"twisted-matrix", "twisted matrix algebra of a stack datum on a simplex"},
      {"barycentric", "reconstruct stack data from chain data"},
      {"fedosov", "solve for a Fedosov pair and report its class"},
      {"char-class", "characteristic class of a Fedosov pair"},
      {"rw", "Rozansky-Witten form and omega-pairing"}};
  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help[name]);
    sub->add_option("input", o.input, "JSON input file");
    sub->add_option("--seed", o.seed, "random seed for sweeps");
    sub->add_option("--trunc-hbar", o.trunc_hbar, "hbar truncation order N");
    sub->add_option("--trunc-degree", o.trunc_degree, "degree truncation (form or weight cap)");
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--sweep", o.sweep, "run the randomized suite with K samples")
        ->check(CLI::Range(1, 100000));
    if (name == "validate-dgla" || name == "totalize")
      sub->add_option("--dgla", o.dgla, "reference DGLA name instead of a file");
    if (name == "fedosov") {
      sub->add_option("--n", o.n, "half dimension");
      sub->add_option("--hbar-order", o.hbar_order, "hbar truncation order");
      sub->add_option("--y-degree", o.y_degree, "weight cap");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  std::string name = app.get_subcommands().front()->get_name();
  Json report;
  int status = 0;
  try {
    report = commands.at(name)(o);
    status = report.value("ok", false) ? 0 : 1;
  } catch (const ParseError& e) {
    report = Json{{"ok", false}, {"error", e.what()}, {"pointer", e.path()}};
    status = 2;
  } catch (const UsageError& e) {
    report = Json{{"ok", false}, {"error", e.what()}};
    status = 2;
  } catch (const Json::exception& e) {
    report = Json{{"ok", false}, {"error", e.what()}};
    status = 2;
  } catch (const DomainError& e) {
    report = Json{{"ok", false}, {"error", e.what()}};
    status = 1;
  }
  Json full{{"command", name}};
  for (const auto& [k, v] : report.items()) full[k] = v;
  print(full, o.format);
  if (status == 2) std::cerr << "error: " << report["error"].get<std::string>() << "\n";
  return status;
}
