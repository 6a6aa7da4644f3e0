#include "defq/io.hpp"

#include <fstream>
#include <sstream>

#include "defq/models.hpp"

namespace defq::io {

std::string child(const std::string& path, const std::string& key) {
  std::string esc;
  for (char ch : key) {
    if (ch == '~') esc += "~0";
    else if (ch == '/') esc += "~1";
    else esc += ch;
  }
  return path + "/" + esc;
}

std::string child(const std::string& path, size_t index) {
  return path + "/" + std::to_string(index);
}

namespace {

const Json& member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(child(path, key), "missing field");
  return *it;
}

const Json* optional_member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  return j;
}

int int_at(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  long long v = j.get<long long>();
  if (v < -1000000 || v > 1000000) throw ParseError(path, "integer out of range");
  return int(v);
}

int nonneg_at(const Json& j, const std::string& path) {
  int v = int_at(j, path);
  if (v < 0) throw ParseError(path, "expected a non-negative integer");
  return v;
}

std::string string_at(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<int> int_list(const Json& j, const std::string& path) {
  std::vector<int> v;
  for (size_t i = 0; i < array_at(j, path).size(); ++i) v.push_back(int_at(j[i], child(path, i)));
  return v;
}

int key_int(const std::string& key, const std::string& path) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(key, &used);
  } catch (const std::exception&) {
    throw ParseError(path, "key is not an integer");
  }
  if (used != key.size() || std::to_string(v) != key) throw ParseError(path, "key is not an integer");
  return v;
}

Json element_json(const Element& e) {
  Json out = Json::array();
  for (const auto& s : e) out.push_back(to_json(s));
  return out;
}

Element parse_element_vector(const Json& j, int dim, const std::string& path) {
  if (!array_at(j, path).is_array() || int(j.size()) != dim)
    throw ParseError(path, "expected " + std::to_string(dim) + " coordinates");
  Element e;
  for (size_t i = 0; i < j.size(); ++i) e.push_back(parse_scalar_at(j[i], child(path, i)));
  return e;
}

Json simplex_json(const Simplex& s) { return Json(s); }

int simplex_id(const Nerve& n, const Json& j, const std::string& path) {
  int id = n.index_of(int_list(j, path));
  if (id < 0) throw ParseError(path, "not a simplex of the nerve");
  return id;
}

template <class Fn>
auto wrap(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

}  // namespace

Json to_json(const Rational& q) { return rational_to_string(q); }

Json to_json(const Scalar& s) {
  if (s.is_real()) return to_json(s.re());
  return Json{{"re", rational_to_string(s.re())}, {"im", rational_to_string(s.im())}};
}

Json to_json(const Series& s) {
  Json c = Json::array();
  for (const auto& v : s.coeffs()) c.push_back(to_json(v));
  return Json{{"pole", s.pole()}, {"trunc", s.trunc()}, {"coeffs", c}};
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const DglaPresentation& L) {
  Json diff = Json::array();
  for (int p = L.lo(); p < L.hi(); ++p) {
    Matrix b = L.differential_block(p);
    if (!b.is_zero()) diff.push_back(Json{{"degree", p}, {"matrix", to_json(b)}});
  }
  Json br = Json::array();
  for (const auto& t : L.bracket_terms()) br.push_back(Json{t.a, t.b, t.k, to_json(t.c)});
  return Json{{"name", L.name()}, {"lo", L.lo()}, {"dims", L.dims()}, {"differential", diff},
              {"bracket", br}};
}

Json to_json(const GradedElement& x) {
  const DglaPresentation& L = x.dgla();
  Json coeffs = Json::object();
  for (int p = L.lo(); p <= L.hi(); ++p)
    for (int i = 0; i < L.dim(p); ++i) {
      const Series& s = x[L.offset(p) + i];
      if (!s.is_zero()) coeffs[std::to_string(p)][std::to_string(i)] = to_json(s);
    }
  return Json{{"dgla", L.name()}, {"trunc", x.trunc()}, {"coeffs", coeffs}};
}

Json to_json(const AlgebraPresentation& a) {
  Json table = Json::array();
  for (int x = 0; x < a.dim(); ++x)
    for (int y = 0; y < a.dim(); ++y)
      for (const auto& [k, c] : a.product(x, y)) table.push_back(Json{x, y, k, to_json(c)});
  Json out{{"name", a.name()}, {"dim", a.dim()}, {"table", table}};
  if (a.unit()) out["unit"] = element_json(*a.unit());
  return out;
}

Json to_json(const HochschildCochain& d) {
  Json entries = Json::array();
  for (size_t in = 0; in < d.num_inputs(); ++in)
    for (int o = 0; o < d.dim(); ++o)
      if (!d.at(in, o).is_zero())
        entries.push_back(Json{{"args", d.args_of(in)}, {"out", o}, {"value", to_json(d.at(in, o))}});
  return Json{{"dim", d.dim()}, {"arity", d.arity()}, {"trunc", d.trunc()}, {"entries", entries}};
}

Json to_json(const Nerve& n) {
  Json s = Json::array();
  for (const auto& x : n.simplices()) s.push_back(simplex_json(x));
  return Json{{"indices", n.num_indices()}, {"simplices", s}};
}

Json to_json(const StackDatum& S) {
  Json algs = Json::array();
  for (const auto& a : S.algebra) algs.push_back(to_json(a));
  Json G = Json::array();
  for (const auto& [k, m] : S.G) G.push_back(Json{{"pair", k}, {"matrix", to_json(m)}});
  Json c = Json::array();
  for (const auto& [k, v] : S.c) c.push_back(Json{{"triple", k}, {"value", element_json(v)}});
  return Json{{"nerve", to_json(S.nerve)}, {"algebras", algs}, {"G", G}, {"c", c}};
}

Json to_json(const ChainDatum& C) {
  Json algs = Json::array();
  for (const auto& a : C.algebra) algs.push_back(to_json(a));
  const Nerve& n = C.nerve;
  Json G = Json::array();
  for (const auto& [k, m] : C.G)
    G.push_back(Json{{"pair", Json{simplex_json(n.simplex(k[0])), simplex_json(n.simplex(k[1]))}},
                     {"matrix", to_json(m)}});
  Json c = Json::array();
  for (const auto& [k, v] : C.c)
    c.push_back(Json{{"triple", Json{simplex_json(n.simplex(k[0])), simplex_json(n.simplex(k[1])),
                                     simplex_json(n.simplex(k[2]))}},
                     {"value", element_json(v)}});
  return Json{{"nerve", to_json(n)}, {"algebras", algs}, {"G", G}, {"c", c}};
}

Json to_json(const StackIso& iso) {
  Json H = Json::array();
  for (const auto& m : iso.H) H.push_back(to_json(m));
  Json b = Json::array();
  for (const auto& [k, v] : iso.b) b.push_back(Json{{"pair", k}, {"value", element_json(v)}});
  return Json{{"H", H}, {"b", b}};
}

Json to_json(const WeylForm& w) {
  Json terms = Json::array();
  for (const auto& [k, c] : w.terms()) {
    std::vector<int> dx;
    for (int a = 0; a < 2 * w.n(); ++a)
      if (k.dx >> a & 1u) dx.push_back(a);
    terms.push_back(Json{{"hbar", k.hbar}, {"y", k.y}, {"x", k.x}, {"dx", dx}, {"c", to_json(c)}});
  }
  return Json{{"n", w.n()}, {"terms", terms}};
}

Json to_json(const CentralSeries& s) {
  Json out = Json::array();
  out.push_back(Json{{"hbar_power", -1}, {"matrix", to_json(s.leading)}});
  for (size_t k = 0; k < s.orders.size(); ++k)
    out.push_back(Json{{"hbar_power", int(k)}, {"matrix", to_json(s.orders[k])}});
  return out;
}

Json to_json(const SymplecticModel& m) { return Json{{"n", m.n}, {"omega", to_json(m.omega)}}; }

Json to_json(const WeylTrunc& t) {
  return Json{{"max_hbar", t.max_hbar}, {"max_weight", t.max_weight}, {"max_base", t.max_base}};
}

Json to_json(const FedosovPair& p) {
  return Json{{"model", to_json(p.model)}, {"trunc", to_json(p.trunc)}, {"F", to_json(p.F)},
              {"c", to_json(p.c)}};
}

Json to_json(const Tensor4& r) {
  Json entries = Json::array();
  int d = int(r.size());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (!r[a][b][i][j].is_zero())
            entries.push_back(Json{{"index", {a, b, i, j}}, {"value", to_json(r[a][b][i][j])}});
  return Json{{"dim", d}, {"entries", entries}};
}

Json to_json(const TotalCochain& x) {
  Json out = Json::object();
  for (const auto& [level, e] : x) out[std::to_string(level)] = to_json(e);
  return out;
}

Json to_json(const ValidationReport& r) {
  Json out{{"ok", r.ok}};
  if (!r.ok) {
    out["axiom"] = r.axiom;
    out["witness"] = r.witness;
    if (!r.detail.empty()) out["detail"] = r.detail;
  }
  return out;
}

Json to_json(const StackReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e{{"name", c.name}, {"ok", c.ok}};
    if (!c.ok) e["witness"] = c.witness;
    checks.push_back(e);
  }
  return Json{{"ok", r.ok}, {"checks", checks}};
}

Json to_json(const DescentReport& r) {
  Json conds = Json::array();
  for (const auto& c : r.conditions)
    conds.push_back(Json{{"name", c.name}, {"ok", c.ok}, {"first_failing_order", c.first_failing_order}});
  return Json{{"ok", r.ok}, {"first_failing_order", r.first_failing_order}, {"conditions", conds}};
}

// ---------------------------------------------------------------- parsing

Rational parse_rational_at(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (!j.is_string()) throw ParseError(path, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

Scalar parse_scalar_at(const Json& j, const std::string& path) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      if (k != "re" && k != "im") throw ParseError(child(path, k), "unexpected field");
    return Scalar(parse_rational_at(member(j, "re", path), child(path, "re")),
                  parse_rational_at(member(j, "im", path), child(path, "im")));
  }
  return Scalar(parse_rational_at(j, path));
}

Series parse_series(const Json& j, const std::string& path) {
  int pole = nonneg_at(member(j, "pole", path), child(path, "pole"));
  int trunc = nonneg_at(member(j, "trunc", path), child(path, "trunc"));
  const std::string cp = child(path, "coeffs");
  const Json& c = array_at(member(j, "coeffs", path), cp);
  if (int(c.size()) != pole + trunc + 1)
    throw ParseError(cp, "expected pole + trunc + 1 coefficients");
  if (pole > max_pole_order()) throw ParseError(child(path, "pole"), "pole order exceeds the cap");
  std::vector<Scalar> v;
  for (size_t i = 0; i < c.size(); ++i) v.push_back(parse_scalar_at(c[i], child(cp, i)));
  return wrap(path, [&] { return Series::from_coeffs(pole, trunc, v); });
}

Matrix parse_matrix(const Json& j, const std::string& path) {
  array_at(j, path);
  int rows = int(j.size());
  int cols = rows ? int(array_at(j[0], child(path, size_t(0))).size()) : 0;
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    std::string rp = child(path, size_t(r));
    if (int(array_at(j[r], rp).size()) != cols) throw ParseError(rp, "ragged matrix");
    for (int c = 0; c < cols; ++c) m(r, c) = parse_scalar_at(j[r][c], child(rp, size_t(c)));
  }
  return m;
}

DglaPtr builtin_dgla(const std::string& name, const std::string& path) {
  if (name == "sl2") return make_sl2();
  if (name == "sl2_exterior") return make_sl2_exterior();
  if (name == "sl2_interval") return make_sl2_interval();
  if (name == "cdga_model") return make_cdga_model();
  if (name == "heisenberg_model") return make_heisenberg_model();
  if (name == "broken_d") return make_broken_d_squared();
  if (name == "broken_jacobi") return make_broken_jacobi();
  // degrees 0..2 form a genuine DGLA; the window from -1 is only exact for
  // computations that stay in range
  if (name.rfind("hochschild:", 0) == 0)
    return wrap(path, [&] { return hochschild_dgla(builtin_algebra(name.substr(11), path), 2, 0); });
  if (name.rfind("hochschild-window:", 0) == 0)
    return wrap(path, [&] { return hochschild_dgla(builtin_algebra(name.substr(18), path), 2, -1); });
  if (name.rfind("abelian:", 0) == 0) {
    std::istringstream in(name.substr(8));
    std::string lo, dims;
    if (std::getline(in, lo, ':') && std::getline(in, dims)) {
      std::vector<int> d;
      std::istringstream ds(dims);
      std::string x;
      try {
        while (std::getline(ds, x, ',')) d.push_back(std::stoi(x));
        if (!d.empty()) return make_abelian_dgla(std::stoi(lo), d);
      } catch (const std::exception&) {
      }
    }
  }
  throw ParseError(path, "unknown DGLA '" + name + "'");
}

AlgebraPresentation builtin_algebra(const std::string& name, const std::string& path) {
  auto number = [&](size_t from) {
    try {
      size_t used = 0;
      int k = std::stoi(name.substr(from), &used);
      if (used == name.size() - from && k >= 1 && k <= 8) return k;
    } catch (const std::exception&) {
    }
    throw ParseError(path, "bad size in '" + name + "'");
  };
  if (name.rfind("poly:", 0) == 0) return truncated_polynomial_algebra(number(5));
  if (name.rfind("matrix:", 0) == 0) return matrix_algebra(number(7));
  if (name.rfind("product:", 0) == 0) return product_algebra(number(8));
  if (name == "upper_triangular") return upper_triangular_algebra();
  throw ParseError(path, "unknown algebra '" + name + "'");
}

DglaPtr parse_dgla(const Json& j, const std::string& path) {
  if (j.is_string()) return builtin_dgla(j.get<std::string>(), path);
  std::string name = string_at(member(j, "name", path), child(path, "name"));
  int lo = int_at(member(j, "lo", path), child(path, "lo"));
  std::vector<int> dims = int_list(member(j, "dims", path), child(path, "dims"));
  for (size_t i = 0; i < dims.size(); ++i)
    if (dims[i] < 0) throw ParseError(child(child(path, "dims"), i), "negative dimension");
  if (dims.empty()) throw ParseError(child(path, "dims"), "no degrees");
  auto L = std::make_shared<DglaPresentation>(name, lo, dims);
  std::string dp = child(path, "differential");
  const Json& diff = array_at(member(j, "differential", path), dp);
  for (size_t i = 0; i < diff.size(); ++i) {
    std::string ep = child(dp, i);
    int p = int_at(member(diff[i], "degree", ep), child(ep, "degree"));
    Matrix m = parse_matrix(member(diff[i], "matrix", ep), child(ep, "matrix"));
    wrap(ep, [&] {
      L->set_differential(p, m);
      return 0;
    });
  }
  std::string bp = child(path, "bracket");
  const Json& br = array_at(member(j, "bracket", path), bp);
  for (size_t i = 0; i < br.size(); ++i) {
    std::string ep = child(bp, i);
    if (!br[i].is_array() || br[i].size() != 4) throw ParseError(ep, "expected [a, b, k, c]");
    int a = int_at(br[i][0], child(ep, size_t(0))), b = int_at(br[i][1], child(ep, size_t(1)));
    int k = int_at(br[i][2], child(ep, size_t(2)));
    Scalar c = parse_scalar_at(br[i][3], child(ep, size_t(3)));
    wrap(ep, [&] {
      L->add_bracket(a, b, k, c);
      return 0;
    });
  }
  return L;
}

GradedElement parse_element(const Json& j, const DglaPtr& L, const std::string& path) {
  if (const Json* name = optional_member(j, "dgla", path))
    if (string_at(*name, child(path, "dgla")) != L->name())
      throw ParseError(child(path, "dgla"), "element refers to '" + name->get<std::string>() +
                                                "', expected '" + L->name() + "'");
  int trunc = nonneg_at(member(j, "trunc", path), child(path, "trunc"));
  GradedElement x(L, trunc);
  std::string cp = child(path, "coeffs");
  const Json& coeffs = member(j, "coeffs", path);
  if (!coeffs.is_object()) throw ParseError(cp, "expected an object");
  for (const auto& [dk, block] : coeffs.items()) {
    std::string bp = child(cp, dk);
    int p = key_int(dk, bp);
    if (p < L->lo() || p > L->hi()) throw ParseError(bp, "degree outside the DGLA");
    if (!block.is_object()) throw ParseError(bp, "expected an object");
    for (const auto& [ik, v] : block.items()) {
      std::string ep = child(bp, ik);
      int i = key_int(ik, ep);
      if (i < 0 || i >= L->dim(p)) throw ParseError(ep, "index outside the degree");
      Series s = parse_series(v, ep);
      if (s.trunc() != trunc) throw ParseError(child(ep, "trunc"), "mixed truncation orders");
      x[L->offset(p) + i] = s;
    }
  }
  return x;
}

AlgebraPresentation parse_algebra(const Json& j, const std::string& path) {
  if (j.is_string()) return builtin_algebra(j.get<std::string>(), path);
  int dim = nonneg_at(member(j, "dim", path), child(path, "dim"));
  if (dim == 0 || dim > 64) throw ParseError(child(path, "dim"), "dimension out of range");
  std::string name = "algebra";
  if (const Json* n = optional_member(j, "name", path)) name = string_at(*n, child(path, "name"));
  AlgebraPresentation a(dim, name);
  std::string tp = child(path, "table");
  const Json& table = array_at(member(j, "table", path), tp);
  for (size_t i = 0; i < table.size(); ++i) {
    std::string ep = child(tp, i);
    if (!table[i].is_array() || table[i].size() != 4) throw ParseError(ep, "expected [a, b, k, c]");
    int x = int_at(table[i][0], child(ep, size_t(0))), y = int_at(table[i][1], child(ep, size_t(1)));
    int k = int_at(table[i][2], child(ep, size_t(2)));
    for (int v : {x, y, k})
      if (v < 0 || v >= dim) throw ParseError(ep, "basis index out of range");
    a.add(x, y, k, parse_scalar_at(table[i][3], child(ep, size_t(3))));
  }
  if (const Json* u = optional_member(j, "unit", path))
    a.set_unit(parse_element_vector(*u, dim, child(path, "unit")));
  return a;
}

HochschildCochain parse_cochain(const Json& j, const std::string& path) {
  int dim = nonneg_at(member(j, "dim", path), child(path, "dim"));
  int arity = nonneg_at(member(j, "arity", path), child(path, "arity"));
  int trunc = nonneg_at(member(j, "trunc", path), child(path, "trunc"));
  if (dim == 0 || dim > 64 || arity > 4) throw ParseError(path, "cochain shape out of range");
  HochschildCochain d(dim, arity, trunc);
  std::string ep0 = child(path, "entries");
  const Json& entries = array_at(member(j, "entries", path), ep0);
  for (size_t i = 0; i < entries.size(); ++i) {
    std::string ep = child(ep0, i);
    std::vector<int> args = int_list(member(entries[i], "args", ep), child(ep, "args"));
    if (int(args.size()) != arity) throw ParseError(child(ep, "args"), "wrong number of arguments");
    for (int a : args)
      if (a < 0 || a >= dim) throw ParseError(child(ep, "args"), "basis index out of range");
    int out = int_at(member(entries[i], "out", ep), child(ep, "out"));
    if (out < 0 || out >= dim) throw ParseError(child(ep, "out"), "basis index out of range");
    Series s = parse_series(member(entries[i], "value", ep), child(ep, "value"));
    if (s.trunc() != trunc) throw ParseError(child(ep, "value"), "mixed truncation orders");
    d.at(args, out) = s;
  }
  return d;
}

Nerve parse_nerve(const Json& j, const std::string& path) {
  int n = nonneg_at(member(j, "indices", path), child(path, "indices"));
  if (n == 0 || n > 8) throw ParseError(child(path, "indices"), "index count out of range");
  std::string sp = child(path, "simplices");
  const Json& s = array_at(member(j, "simplices", path), sp);
  std::vector<Simplex> gens;
  for (size_t i = 0; i < s.size(); ++i) {
    std::string ep = child(sp, i);
    Simplex x = int_list(s[i], ep);
    if (x.empty()) throw ParseError(ep, "empty simplex");
    for (size_t k = 0; k < x.size(); ++k)
      if (x[k] < 0 || x[k] >= n || (k && x[k] <= x[k - 1]))
        throw ParseError(ep, "vertices must be increasing indices");
    gens.push_back(x);
  }
  return wrap(path, [&] { return Nerve(n, gens); });
}

namespace {

template <class Datum>
void parse_algebras(const Json& j, const std::string& path, size_t count, Datum& D) {
  std::string ap = child(path, "algebras");
  const Json& algs = array_at(member(j, "algebras", path), ap);
  if (algs.size() != count)
    throw ParseError(ap, "expected " + std::to_string(count) + " algebras");
  for (size_t i = 0; i < algs.size(); ++i) D.algebra.push_back(parse_algebra(algs[i], child(ap, i)));
}

}  // namespace

StackDatum parse_stack(const Json& j, const std::string& path) {
  StackDatum S;
  S.nerve = parse_nerve(member(j, "nerve", path), child(path, "nerve"));
  parse_algebras(j, path, size_t(S.nerve.num_indices()), S);
  std::string gp = child(path, "G");
  const Json& G = array_at(member(j, "G", path), gp);
  for (size_t i = 0; i < G.size(); ++i) {
    std::string ep = child(gp, i);
    std::vector<int> k = int_list(member(G[i], "pair", ep), child(ep, "pair"));
    if (k.size() != 2) throw ParseError(child(ep, "pair"), "expected two indices");
    for (int v : k)
      if (v < 0 || v >= S.nerve.num_indices()) throw ParseError(child(ep, "pair"), "index out of range");
    Matrix m = parse_matrix(member(G[i], "matrix", ep), child(ep, "matrix"));
    if (m.rows() != S.algebra[k[0]].dim() || m.cols() != S.algebra[k[1]].dim())
      throw ParseError(child(ep, "matrix"), "shape does not match the algebras");
    S.G[{k[0], k[1]}] = m;
  }
  std::string cp = child(path, "c");
  const Json& c = array_at(member(j, "c", path), cp);
  for (size_t i = 0; i < c.size(); ++i) {
    std::string ep = child(cp, i);
    std::vector<int> k = int_list(member(c[i], "triple", ep), child(ep, "triple"));
    if (k.size() != 3) throw ParseError(child(ep, "triple"), "expected three indices");
    for (int v : k)
      if (v < 0 || v >= S.nerve.num_indices()) throw ParseError(child(ep, "triple"), "index out of range");
    S.c[{k[0], k[1], k[2]}] =
        parse_element_vector(member(c[i], "value", ep), S.algebra[k[0]].dim(), child(ep, "value"));
  }
  return S;
}

ChainDatum parse_chain(const Json& j, const std::string& path) {
  ChainDatum C;
  C.nerve = parse_nerve(member(j, "nerve", path), child(path, "nerve"));
  parse_algebras(j, path, size_t(C.nerve.size()), C);
  std::string gp = child(path, "G");
  const Json& G = array_at(member(j, "G", path), gp);
  for (size_t i = 0; i < G.size(); ++i) {
    std::string ep = child(gp, i), kp = child(ep, "pair");
    const Json& k = array_at(member(G[i], "pair", ep), kp);
    if (k.size() != 2) throw ParseError(kp, "expected two simplices");
    int s = simplex_id(C.nerve, k[0], child(kp, size_t(0)));
    int t = simplex_id(C.nerve, k[1], child(kp, size_t(1)));
    Matrix m = parse_matrix(member(G[i], "matrix", ep), child(ep, "matrix"));
    if (m.rows() != C.algebra[s].dim() || m.cols() != C.algebra[t].dim())
      throw ParseError(child(ep, "matrix"), "shape does not match the algebras");
    C.G[{s, t}] = m;
  }
  std::string cp = child(path, "c");
  const Json& c = array_at(member(j, "c", path), cp);
  for (size_t i = 0; i < c.size(); ++i) {
    std::string ep = child(cp, i), kp = child(ep, "triple");
    const Json& k = array_at(member(c[i], "triple", ep), kp);
    if (k.size() != 3) throw ParseError(kp, "expected three simplices");
    Triple key;
    for (size_t x = 0; x < 3; ++x) key[x] = simplex_id(C.nerve, k[x], child(kp, x));
    C.c[key] = parse_element_vector(member(c[i], "value", ep), C.algebra[key[0]].dim(),
                                    child(ep, "value"));
  }
  return C;
}

StackIso parse_stack_iso(const Json& j, const std::string& path) {
  StackIso iso;
  std::string hp = child(path, "H");
  const Json& H = array_at(member(j, "H", path), hp);
  for (size_t i = 0; i < H.size(); ++i) iso.H.push_back(parse_matrix(H[i], child(hp, i)));
  std::string bp = child(path, "b");
  const Json& b = array_at(member(j, "b", path), bp);
  for (size_t i = 0; i < b.size(); ++i) {
    std::string ep = child(bp, i);
    std::vector<int> k = int_list(member(b[i], "pair", ep), child(ep, "pair"));
    if (k.size() != 2 || k[0] < 0 || k[0] >= int(iso.H.size()))
      throw ParseError(child(ep, "pair"), "expected two valid indices");
    iso.b[{k[0], k[1]}] = parse_element_vector(member(b[i], "value", ep), iso.H[k[0]].cols(),
                                               child(ep, "value"));
  }
  return iso;
}

WeylForm parse_weyl(const Json& j, const std::string& path) {
  int n = int_at(member(j, "n", path), child(path, "n"));
  if (n < 1 || n > 4) throw ParseError(child(path, "n"), "half dimension out of range");
  WeylForm w(n);
  std::string tp = child(path, "terms");
  const Json& terms = array_at(member(j, "terms", path), tp);
  for (size_t i = 0; i < terms.size(); ++i) {
    std::string ep = child(tp, i);
    WeylKey k;
    k.hbar = int_at(member(terms[i], "hbar", ep), child(ep, "hbar"));
    if (k.hbar < -1) throw ParseError(child(ep, "hbar"), "pole of order two in hbar");
    k.y = int_list(member(terms[i], "y", ep), child(ep, "y"));
    k.x = int_list(member(terms[i], "x", ep), child(ep, "x"));
    for (const auto& [name, v] : {std::pair<std::string, const std::vector<int>*>{"y", &k.y}, {"x", &k.x}}) {
      if (int(v->size()) != 2 * n) throw ParseError(child(ep, name), "expected 2n exponents");
      for (int e : *v)
        if (e < 0) throw ParseError(child(ep, name), "negative exponent");
    }
    std::vector<int> dx = int_list(member(terms[i], "dx", ep), child(ep, "dx"));
    for (size_t a = 0; a < dx.size(); ++a) {
      if (dx[a] < 0 || dx[a] >= 2 * n || (a && dx[a] <= dx[a - 1]))
        throw ParseError(child(ep, "dx"), "one-form indices must be increasing");
      k.dx |= 1u << dx[a];
    }
    if (w.terms().count(k)) throw ParseError(ep, "repeated monomial");
    w.add(k, parse_scalar_at(member(terms[i], "c", ep), child(ep, "c")));
  }
  return w;
}

CentralSeries parse_central_series(const Json& j, const std::string& path) {
  CentralSeries s;
  array_at(j, path);
  for (size_t i = 0; i < j.size(); ++i) {
    std::string ep = child(path, i);
    int p = int_at(member(j[i], "hbar_power", ep), child(ep, "hbar_power"));
    if (p != int(i) - 1) throw ParseError(child(ep, "hbar_power"), "powers must run -1, 0, 1, ...");
    Matrix m = parse_matrix(member(j[i], "matrix", ep), child(ep, "matrix"));
    if (i == 0) s.leading = m;
    else s.orders.push_back(m);
  }
  if (j.empty()) throw ParseError(path, "missing the leading term");
  return s;
}

SymplecticModel parse_model(const Json& j, const std::string& path) {
  Matrix w = parse_matrix(member(j, "omega", path), child(path, "omega"));
  if (const Json* n = optional_member(j, "n", path))
    if (int_at(*n, child(path, "n")) * 2 != w.rows())
      throw ParseError(child(path, "n"), "does not match the form");
  return wrap(child(path, "omega"), [&] { return SymplecticModel::from_form(w); });
}

WeylTrunc parse_weyl_trunc(const Json& j, const std::string& path) {
  WeylTrunc t;
  t.max_hbar = nonneg_at(member(j, "max_hbar", path), child(path, "max_hbar"));
  t.max_weight = nonneg_at(member(j, "max_weight", path), child(path, "max_weight"));
  t.max_base = nonneg_at(member(j, "max_base", path), child(path, "max_base"));
  return t;
}

FedosovPair parse_fedosov_pair(const Json& j, const std::string& path) {
  FedosovPair p;
  p.model = parse_model(member(j, "model", path), child(path, "model"));
  p.trunc = parse_weyl_trunc(member(j, "trunc", path), child(path, "trunc"));
  p.F = parse_weyl(member(j, "F", path), child(path, "F"));
  p.c = parse_weyl(member(j, "c", path), child(path, "c"));
  if (p.F.n() != p.model.n) throw ParseError(child(path, "F"), "wrong half dimension");
  if (p.c.n() != p.model.n) throw ParseError(child(path, "c"), "wrong half dimension");
  return p;
}

Tensor4 parse_tensor4(const Json& j, const std::string& path) {
  int d = int_at(member(j, "dim", path), child(path, "dim"));
  if (d < 1 || d > 8) throw ParseError(child(path, "dim"), "dimension out of range");
  Tensor4 r(d, std::vector<std::vector<std::vector<Scalar>>>(
                   d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d))));
  std::string ep0 = child(path, "entries");
  const Json& entries = array_at(member(j, "entries", path), ep0);
  for (size_t i = 0; i < entries.size(); ++i) {
    std::string ep = child(ep0, i);
    std::vector<int> ix = int_list(member(entries[i], "index", ep), child(ep, "index"));
    if (ix.size() != 4) throw ParseError(child(ep, "index"), "expected four indices");
    for (int v : ix)
      if (v < 0 || v >= d) throw ParseError(child(ep, "index"), "index out of range");
    r[ix[0]][ix[1]][ix[2]][ix[3]] = parse_scalar_at(member(entries[i], "value", ep), child(ep, "value"));
  }
  return r;
}

Json read_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("", "cannot open " + file);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("", file + ": " + e.what());
  }
}

}  // namespace defq::io
