#pragma once

#include "nambu/forms.hpp"
#include "nambu/laurent.hpp"
#include "nambu/tensor.hpp"

#include <json.hpp>

namespace nambu {

/// Ordered JSON keeps emitted key order deterministic.
using Json = nlohmann::ordered_json;

Json table_to_json(const TablePtr& table);
/// Accepts either ["x", "y", ...] (plain coordinates) or
/// [{"name":..., "kind":..., "base":..., "order":...}, ...].
TablePtr table_from_json(const Json& j);

/// Canonical polynomial form: {"vars": ..., "terms": [[[e...], "n/d"], ...]}
/// with the term list sorted by exponent vector.
Json poly_to_json(const MultiPoly& p);
/// The sorted term list alone.
Json poly_terms_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const Json& j);
MultiPoly poly_terms_from_json(const Json& terms, const TablePtr& table);

/// {"vars": ..., "window": [lo | "-inf", hi], "coeffs": [[k, terms], ...]}.
Json laurent_to_json(const Laurent& a);
Laurent laurent_from_json(const Json& j);
Laurent laurent_from_json(const Json& j, const TablePtr& table);

/// {"n": ..., "N": ..., "vars": ..., "terms": [[[i1..in], terms], ...]}.
Json tensor_to_json(const NambuTensor& t);
NambuTensor tensor_from_json(const Json& j);

/// {"degree": ..., "vars": ..., "terms": [[[1-based coord idx], terms], ...]}.
Json form_to_json(const DifferentialForm& f);
DifferentialForm form_from_json(const Json& j, const TablePtr& table);

/// Adds a tau-monomial key per member form.
Json pencil_to_json(const FormPencil& p);
FormPencil pencil_from_json(const Json& j, const TablePtr& table);

} // namespace nambu
