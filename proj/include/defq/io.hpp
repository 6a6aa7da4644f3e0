// JSON encoding of the library types. Rationals are reduced strings "p/q",
// Gaussian rationals {"re", "im"}, series {"pole", "trunc", "coeffs"} with
// coeffs listed from hbar^-pole up to hbar^trunc. Parsers throw ParseError
// carrying the JSON pointer of the offending value.
#ifndef DEFQ_IO_HPP
#define DEFQ_IO_HPP

#include <string>

#include <json.hpp>

#include "defq/cosimplicial.hpp"
#include "defq/descent.hpp"
#include "defq/fedosov.hpp"
#include "defq/gerbe.hpp"
#include "defq/hochschild.hpp"

namespace defq::io {

using Json = nlohmann::json;

// the pointer of child `key` under `path`
std::string child(const std::string& path, const std::string& key);
std::string child(const std::string& path, size_t index);

Json to_json(const Rational& q);
Json to_json(const Scalar& s);
Json to_json(const Series& s);
Json to_json(const Matrix& m);
Json to_json(const DglaPresentation& L);
// {"dgla": name, "trunc": N, "coeffs": {"<degree>": {"<index in degree>": series}}}
Json to_json(const GradedElement& x);
// {"name", "dim", "unit"?, "table": [[a, b, k, c], ...]}
Json to_json(const AlgebraPresentation& a);
// {"dim", "arity", "trunc", "entries": [{"args", "out", "value"}]}
Json to_json(const HochschildCochain& d);
// {"indices", "simplices"}
Json to_json(const Nerve& n);
// {"nerve", "algebras", "G": [{"pair", "matrix"}], "c": [{"triple", "value"}]}
Json to_json(const StackDatum& s);
// like a stack datum with simplices given by vertex lists
Json to_json(const ChainDatum& c);
Json to_json(const StackIso& iso);
// {"n", "terms": [{"hbar", "y", "x", "dx", "c"}]}, dx lists one-form indices
Json to_json(const WeylForm& w);
// hbar-indexed list [{"hbar_power", "matrix"}] starting at -1
Json to_json(const CentralSeries& s);
Json to_json(const SymplecticModel& m);
Json to_json(const WeylTrunc& t);
Json to_json(const FedosovPair& p);
// {"dim", "entries": [{"index": [a, b, i, j], "value"}]}
Json to_json(const Tensor4& r);
Json to_json(const TotalCochain& x);
Json to_json(const ValidationReport& r);
Json to_json(const StackReport& r);
Json to_json(const DescentReport& r);

Rational parse_rational_at(const Json& j, const std::string& path);
Scalar parse_scalar_at(const Json& j, const std::string& path);
Series parse_series(const Json& j, const std::string& path = "");
Matrix parse_matrix(const Json& j, const std::string& path = "");
DglaPtr parse_dgla(const Json& j, const std::string& path = "");
// the element must name `L` when it names a DGLA at all
GradedElement parse_element(const Json& j, const DglaPtr& L, const std::string& path = "");
AlgebraPresentation parse_algebra(const Json& j, const std::string& path = "");
HochschildCochain parse_cochain(const Json& j, const std::string& path = "");
Nerve parse_nerve(const Json& j, const std::string& path = "");
StackDatum parse_stack(const Json& j, const std::string& path = "");
ChainDatum parse_chain(const Json& j, const std::string& path = "");
StackIso parse_stack_iso(const Json& j, const std::string& path = "");
WeylForm parse_weyl(const Json& j, const std::string& path = "");
CentralSeries parse_central_series(const Json& j, const std::string& path = "");
SymplecticModel parse_model(const Json& j, const std::string& path = "");
WeylTrunc parse_weyl_trunc(const Json& j, const std::string& path = "");
FedosovPair parse_fedosov_pair(const Json& j, const std::string& path = "");
Tensor4 parse_tensor4(const Json& j, const std::string& path = "");

// Named reference objects usable wherever a DGLA or an algebra is expected:
// "abelian:<lo>:<d0>,<d1>,..", "sl2", "sl2_exterior", "sl2_interval",
// "cdga_model", "heisenberg_model", "broken_d", "broken_jacobi",
// "hochschild:<algebra>" (degrees 0..2), "hochschild-window:<algebra>"
// (degrees -1..2); algebras "poly:<k>", "matrix:<n>",
// "upper_triangular", "product:<k>".
DglaPtr builtin_dgla(const std::string& name, const std::string& path = "");
AlgebraPresentation builtin_algebra(const std::string& name, const std::string& path = "");

// whole file; ParseError with an empty pointer on syntax errors
Json read_file(const std::string& file);

}  // namespace defq::io

#endif
