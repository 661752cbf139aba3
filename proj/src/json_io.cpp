#include "pickdirichlet/json_io.hpp"

#include <cctype>

namespace pickdirichlet {

namespace {

const json& require_field(const json& j, const char* name) {
    const auto it = j.find(name);
    if (it == j.end())
        throw InputError(std::string("missing required field '") + name + "'");
    return *it;
}

} // namespace

json series_to_json(const DirichletSeries& s) {
    json coeffs = json::array();
    for (std::size_t n = 1; n <= s.depth(); ++n) {
        if (s.mode() == ScalarMode::exact_rational)
            coeffs.push_back(s.at(n).str());
        else
            coeffs.push_back(s.at(n).to_double());
    }
    return json{{"N", s.depth()}, {"mode", to_string(s.mode())}, {"coeffs", coeffs}};
}

DirichletSeries series_from_json(const json& j) {
    if (!j.is_object()) throw InputError("series must be a JSON object");
    const auto& n_field = require_field(j, "N");
    if (!n_field.is_number_integer() || n_field.get<std::int64_t>() < 1)
        throw InputError("series field 'N' must be a positive integer");
    const auto depth = n_field.get<std::size_t>();

    ScalarMode mode;
    try {
        mode = scalar_mode_from_string(require_field(j, "mode").get<std::string>());
    } catch (const Error& e) {
        throw InputError(e.what());
    }

    const auto& coeffs = require_field(j, "coeffs");
    if (!coeffs.is_array() || coeffs.size() != depth)
        throw InputError("series field 'coeffs' must be an array of length N");

    DirichletSeries s(mode, depth);
    for (std::size_t i = 0; i < depth; ++i) {
        const json& c = coeffs[i];
        try {
            if (c.is_string())
                s.set(i + 1, Scalar::parse(c.get<std::string>(), mode));
            else if (c.is_number())
                s.set(i + 1, mode == ScalarMode::exact_rational && c.is_number_integer()
                                 ? Scalar::rational(c.get<long>(), 1)
                                 : Scalar::real(c.get<double>()));
            else
                throw InputError("series coefficients must be numbers or strings");
        } catch (const Error& e) {
            throw InputError(std::string(e.what()) + " (coefficient index " +
                             std::to_string(i + 1) + ")");
        }
    }
    return s;
}

json verdict_to_json(const PickVerdict& v) {
    json out{{"complete_pick", v.is_complete_pick}, {"depth", v.depth}};
    if (v.first_violation)
        out["first_violation"] =
            json{{"n", v.first_violation->n}, {"c_n", v.first_violation->c_n.str()}};
    else
        out["first_violation"] = nullptr;
    if (v.dimension_warning) out["dim_warning"] = true;
    return out;
}

json growth_report_to_json(const GrowthReport& r) {
    json failures = json::array();
    for (const GrowthFailure& f : r.failures) {
        json entry{{"kind", f.kind == GrowthFailure::Kind::power_inequality
                                ? "power_inequality"
                                : "convolution_identity"},
                   {"n", f.n},
                   {"lhs", f.lhs},
                   {"rhs", f.rhs}};
        if (f.kind == GrowthFailure::Kind::power_inequality) entry["k"] = f.k;
        failures.push_back(std::move(entry));
    }
    return json{{"n_max", r.n_max},
                {"k_max", r.k_max},
                {"depth", r.depth},
                {"pairs_checked", r.pairs_checked},
                {"identities_checked", r.identities_checked},
                {"tol", r.tol_used},
                {"ok", r.ok()},
                {"failures", failures}};
}

json embedding_to_json(const Embedding& e) {
    json b = json::array(), n = json::array();
    for (std::size_t k = 0; k < e.size(); ++k) {
        b.push_back(e.weight(k));
        n.push_back(e.generators()[k]);
    }
    return json{{"b", b},
                {"n", n},
                {"normalized", e.unit_normalized()},
                {"truncated_infinite", e.truncated_infinite()}};
}

Embedding embedding_from_json(const json& j) {
    if (!j.is_object()) throw InputError("embedding must be a JSON object");
    const auto& b = require_field(j, "b");
    const auto& n = require_field(j, "n");
    if (!b.is_array() || !n.is_array() || b.size() != n.size())
        throw InputError("embedding fields 'b' and 'n' must be arrays of equal length");

    std::vector<Scalar> weights_sq;
    std::vector<std::uint64_t> gens;
    for (const auto& x : b) {
        if (!x.is_number()) throw InputError("embedding weights must be numbers");
        const double w = x.get<double>();
        weights_sq.push_back(Scalar::real(w * w));
    }
    for (const auto& x : n) {
        if (!x.is_number_integer())
            throw InputError("embedding generators must be integers");
        gens.push_back(x.get<std::uint64_t>());
    }
    const bool truncated = j.value("truncated_infinite", false);
    // Unnormalized embeddings (sum b_k^2 > 1, as produced by from-kernel on
    // kernels with heavy weight sequences) are representable; ball membership
    // is enforced pointwise at evaluation.
    return Embedding(std::move(weights_sq), std::move(gens), truncated,
                     std::nullopt, /*allow_unnormalized=*/true);
}

json witness_to_json(const Witness& w) {
    return json{{"I", w.I}, {"J", w.J}, {"kappa", w.kappa}, {"mu", w.mu}, {"nu", w.nu}};
}

Witness witness_from_json(const json& j) {
    if (!j.is_object()) throw InputError("witness must be a JSON object");
    Witness w;
    try {
        w.I = require_field(j, "I").get<std::vector<std::size_t>>();
        w.J = require_field(j, "J").get<std::vector<std::size_t>>();
        w.kappa = require_field(j, "kappa").get<std::vector<std::uint64_t>>();
        w.mu = require_field(j, "mu").get<std::vector<std::uint64_t>>();
        w.nu = require_field(j, "nu").get<std::vector<std::uint64_t>>();
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed witness: ") + e.what());
    }
    return w;
}

json inertia_to_json(const InertiaResult& r) {
    return json{{"n_plus", r.n_plus},
                {"n_zero", r.n_zero},
                {"n_minus", r.n_minus},
                {"tol", r.tol_used}};
}

std::complex<double> parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw InputError("empty complex literal");

    // Split at the last top-level +/- that is not an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if (s[i] != '+' && s[i] != '-') continue;
        const char prev = s[i - 1];
        if (prev == 'e' || prev == 'E') continue;
        split = i;
        break;
    }

    const auto parse_real = [](const std::string& t) -> double {
        std::size_t pos = 0;
        const double v = std::stod(t, &pos);
        if (pos != t.size()) throw InputError("cannot parse number '" + t + "'");
        return v;
    };
    const auto parse_imag_term = [&](std::string t) -> double {
        t.pop_back(); // trailing 'i'
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t);
    };

    try {
        if (s.back() == 'i' || s.back() == 'I') {
            s.back() = 'i';
            if (split == std::string::npos)
                return {0.0, parse_imag_term(s)};
            return {parse_real(s.substr(0, split)), parse_imag_term(s.substr(split))};
        }
        return {parse_real(s), 0.0};
    } catch (const std::exception& e) {
        throw InputError("cannot parse complex literal '" + text + "': " + e.what());
    }
}

std::complex<double> complex_from_json(const json& j) {
    if (j.is_string()) return parse_complex(j.get<std::string>());
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw InputError("complex values must be [re, im], a number, or an 'a+bi' string");
}

json complex_to_json(std::complex<double> z) {
    return json::array({z.real(), z.imag()});
}

std::vector<std::complex<double>> points_from_json(const json& j) {
    const json& arr = j.is_object() && j.contains("points") ? j["points"] : j;
    if (!arr.is_array()) throw InputError("points must be a JSON array");
    std::vector<std::complex<double>> out;
    for (const auto& x : arr) out.push_back(complex_from_json(x));
    return out;
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw InputError("matrix must be a JSON array of rows");
    ComplexMatrix m;
    for (const auto& row : j) {
        if (!row.is_array()) throw InputError("matrix rows must be arrays");
        std::vector<std::complex<double>> r;
        for (const auto& x : row) r.push_back(complex_from_json(x));
        m.push_back(std::move(r));
    }
    return m;
}

std::vector<ComplexMatrix> matrix_list_from_json(const json& j) {
    const json& arr = j.is_object() && j.contains("targets") ? j["targets"] : j;
    if (!arr.is_array()) throw InputError("targets must be a JSON array of matrices");
    std::vector<ComplexMatrix> out;
    for (const auto& m : arr) out.push_back(matrix_from_json(m));
    return out;
}

} // namespace pickdirichlet
