#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "pickdirichlet/ball_embedding.hpp"
#include "pickdirichlet/independence.hpp"
#include "pickdirichlet/pick_analysis.hpp"
#include "pickdirichlet/spectra.hpp"

namespace pickdirichlet {

// Schema violations in otherwise well-formed JSON. The CLI maps these (and
// JSON parse errors) to exit code 2, as opposed to domain errors (exit 1).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& w) : std::runtime_error(w) {}
};

using json = nlohmann::ordered_json;

// {"N": int, "mode": "rational"|"real64", "coeffs": [...]} with coeffs[0] =
// a_1; rationals as "p/q" strings, reals as numbers.
json series_to_json(const DirichletSeries& s);
DirichletSeries series_from_json(const json& j);

// {"complete_pick": bool, "depth": int, "first_violation": null|{"n", "c_n"}}
json verdict_to_json(const PickVerdict& v);

json growth_report_to_json(const GrowthReport& r);

// {"b": [...], "n": [...], "normalized": bool, "truncated_infinite": bool}
json embedding_to_json(const Embedding& e);
Embedding embedding_from_json(const json& j);

// {"I": [...], "J": [...], "kappa": [...], "mu": [...], "nu": [...]}
json witness_to_json(const Witness& w);
Witness witness_from_json(const json& j);

json inertia_to_json(const InertiaResult& r);

// Complex values serialize as [re, im]; inputs also accept "a+bi" strings.
std::complex<double> parse_complex(const std::string& text);
std::complex<double> complex_from_json(const json& j);
json complex_to_json(std::complex<double> z);

std::vector<std::complex<double>> points_from_json(const json& j);
ComplexMatrix matrix_from_json(const json& j);
std::vector<ComplexMatrix> matrix_list_from_json(const json& j);

} // namespace pickdirichlet
