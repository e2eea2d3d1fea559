#include "nambu/json_io.hpp"

#include "nambu/errors.hpp"

namespace nambu {

namespace {

const Json& expect(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing key '") + key + "'");
    return j.at(key);
}

int expect_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string("expected integer ") + what);
    return j.get<int>();
}

} // namespace

Json table_to_json(const TablePtr& table) {
    Json out = Json::array();
    for (int i = 0; i < table->size(); ++i) {
        const Variable& v = table->at(i);
        Json e;
        e["name"] = v.name;
        switch (v.kind) {
        case VarKind::Coordinate: e["kind"] = "coordinate"; break;
        case VarKind::Time: e["kind"] = "time"; break;
        case VarKind::Jet:
            e["kind"] = "jet";
            e["base"] = v.base;
            e["order"] = v.order;
            break;
        }
        out.push_back(std::move(e));
    }
    return out;
}

TablePtr table_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("variable table must be an array");
    VariableTable::Builder b;
    for (const auto& e : j) {
        if (e.is_string()) {
            b.coordinate(e.get<std::string>());
            continue;
        }
        if (!e.is_object()) throw ParseError("variable entry must be string or object");
        const std::string name = expect(e, "name").get<std::string>();
        const std::string kind = e.contains("kind") ? e.at("kind").get<std::string>()
                                                    : std::string("coordinate");
        if (kind == "coordinate") {
            b.coordinate(name);
        } else if (kind == "time") {
            b.time(name);
        } else if (kind == "jet") {
            const std::string base = expect(e, "base").get<std::string>();
            const int order = expect_int(expect(e, "order"), "jet order");
            b.jet_variable(base, order);
        } else {
            throw ParseError("unknown variable kind '" + kind + "'");
        }
    }
    return b.build();
}

Json poly_terms_to_json(const MultiPoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json t = Json::array();
        t.push_back(Json(e));
        t.push_back(rational_to_string(c));
        terms.push_back(std::move(t));
    }
    return terms;
}

Json poly_to_json(const MultiPoly& p) {
    Json out;
    out["vars"] = table_to_json(p.table());
    out["terms"] = poly_terms_to_json(p);
    return out;
}

MultiPoly poly_terms_from_json(const Json& terms, const TablePtr& table) {
    if (!terms.is_array()) throw ParseError("polynomial terms must be an array");
    MultiPoly p(table);
    for (const auto& t : terms) {
        if (!t.is_array() || t.size() != 2) throw ParseError("term must be [[exponents], coeff]");
        std::vector<int> exps;
        for (const auto& e : t.at(0)) exps.push_back(expect_int(e, "exponent"));
        Rational c;
        if (t.at(1).is_string())
            c = rational_from_string(t.at(1).get<std::string>());
        else if (t.at(1).is_number_integer())
            c = Rational(t.at(1).get<long long>());
        else
            throw ParseError("coefficient must be \"num/den\" or integer");
        p += MultiPoly::monomial(table, exps, c);
    }
    return p;
}

MultiPoly poly_from_json(const Json& j) {
    TablePtr table = table_from_json(expect(j, "vars"));
    return poly_terms_from_json(expect(j, "terms"), table);
}

Json laurent_to_json(const Laurent& a) {
    Json out;
    out["vars"] = table_to_json(a.table());
    Json window = Json::array();
    if (a.has_tail())
        window.push_back(a.lo());
    else
        window.push_back("-inf");
    window.push_back(a.hi());
    out["window"] = std::move(window);
    Json coeffs = Json::array();
    for (const auto& [k, p] : a.coeffs()) {
        Json e = Json::array();
        e.push_back(k);
        e.push_back(poly_terms_to_json(p));
        coeffs.push_back(std::move(e));
    }
    out["coeffs"] = std::move(coeffs);
    return out;
}

Laurent laurent_from_json(const Json& j, const TablePtr& table) {
    const Json& window = expect(j, "window");
    if (!window.is_array() || window.size() != 2) throw ParseError("window must be [lo, hi]");
    int lo = Laurent::kNoTail;
    if (window.at(0).is_string()) {
        if (window.at(0).get<std::string>() != "-inf") throw ParseError("bad window lo");
    } else {
        lo = expect_int(window.at(0), "window lo");
    }
    const int hi = expect_int(window.at(1), "window hi");
    Laurent a(table, lo, hi);
    for (const auto& e : expect(j, "coeffs")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("coeff entry must be [k, terms]");
        a.set_coeff(expect_int(e.at(0), "lambda exponent"),
                    poly_terms_from_json(e.at(1), table));
    }
    return a;
}

Laurent laurent_from_json(const Json& j) {
    TablePtr table = table_from_json(expect(j, "vars"));
    return laurent_from_json(j, table);
}

Json tensor_to_json(const NambuTensor& t) {
    Json out;
    out["n"] = t.order();
    out["N"] = t.dim();
    out["vars"] = table_to_json(t.table());
    Json terms = Json::array();
    for (const auto& [idx, p] : t.entries()) {
        Json e = Json::array();
        e.push_back(Json(idx));
        e.push_back(poly_terms_to_json(p));
        terms.push_back(std::move(e));
    }
    out["terms"] = std::move(terms);
    return out;
}

NambuTensor tensor_from_json(const Json& j) {
    const int n = expect_int(expect(j, "n"), "tensor order");
    TablePtr table;
    if (j.contains("vars")) {
        table = table_from_json(j.at("vars"));
    } else {
        const int N = expect_int(expect(j, "N"), "dimension");
        std::vector<std::string> names;
        for (int i = 1; i <= N; ++i) names.push_back("x" + std::to_string(i));
        table = VariableTable::coordinates(names);
    }
    NambuTensor t(table, n);
    for (const auto& e : expect(j, "terms")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("tensor term must be [[idx], terms]");
        std::vector<int> idx;
        for (const auto& i : e.at(0)) idx.push_back(expect_int(i, "tensor index"));
        t.add_entry(idx, poly_terms_from_json(e.at(1), table));
    }
    return t;
}

Json form_to_json(const DifferentialForm& f) {
    Json out;
    out["degree"] = f.degree();
    out["vars"] = table_to_json(f.table());
    Json terms = Json::array();
    for (const auto& [idx, p] : f.terms()) {
        Json e = Json::array();
        Json one_based = Json::array();
        for (int c : idx) one_based.push_back(c + 1);
        e.push_back(std::move(one_based));
        e.push_back(poly_terms_to_json(p));
        terms.push_back(std::move(e));
    }
    out["terms"] = std::move(terms);
    return out;
}

DifferentialForm form_from_json(const Json& j, const TablePtr& table) {
    const int degree = expect_int(expect(j, "degree"), "form degree");
    DifferentialForm f(table, degree);
    for (const auto& e : expect(j, "terms")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("form term must be [[idx], terms]");
        std::vector<int> idx;
        for (const auto& i : e.at(0)) idx.push_back(expect_int(i, "coordinate index") - 1);
        f.add_term(idx, poly_terms_from_json(e.at(1), table));
    }
    return f;
}

Json pencil_to_json(const FormPencil& p) {
    Json out;
    out["degree"] = p.degree();
    out["tau_arity"] = p.tau_arity();
    out["vars"] = table_to_json(p.table());
    Json terms = Json::array();
    for (const auto& [tau, f] : p.terms()) {
        Json e;
        e["tau"] = Json(tau);
        Json fterms = Json::array();
        for (const auto& [idx, v] : f.terms()) {
            Json t = Json::array();
            Json one_based = Json::array();
            for (int c : idx) one_based.push_back(c + 1);
            t.push_back(std::move(one_based));
            t.push_back(poly_terms_to_json(v));
            fterms.push_back(std::move(t));
        }
        e["form"] = std::move(fterms);
        terms.push_back(std::move(e));
    }
    out["terms"] = std::move(terms);
    return out;
}

FormPencil pencil_from_json(const Json& j, const TablePtr& table) {
    const int degree = expect_int(expect(j, "degree"), "pencil degree");
    const int arity = expect_int(expect(j, "tau_arity"), "tau arity");
    FormPencil p(table, degree, arity);
    for (const auto& e : expect(j, "terms")) {
        std::vector<int> tau;
        for (const auto& t : expect(e, "tau")) tau.push_back(expect_int(t, "tau exponent"));
        DifferentialForm f(table, degree);
        for (const auto& ft : expect(e, "form")) {
            if (!ft.is_array() || ft.size() != 2) throw ParseError("pencil form term");
            std::vector<int> idx;
            for (const auto& i : ft.at(0)) idx.push_back(expect_int(i, "coordinate index") - 1);
            f.add_term(idx, poly_terms_from_json(ft.at(1), table));
        }
        p.add(tau, f);
    }
    return p;
}

} // namespace nambu
