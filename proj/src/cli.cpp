#include "pickdirichlet/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pickdirichlet/acceptance.hpp"
#include "pickdirichlet/json_io.hpp"
#include "pickdirichlet/kernel_families.hpp"

namespace pickdirichlet {

namespace {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("cannot parse '" + path + "': " + e.what());
    }
}

std::size_t default_depth() {
    if (const char* env = std::getenv("PICKDIRICHLET_DEPTH")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw InputError("PICKDIRICHLET_DEPTH must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    return 1000;
}

struct Output {
    std::ostream& stream;
    bool pretty = false;
    std::string path;

    void emit(const json& j) const {
        const std::string text = pretty ? j.dump(2) : j.dump();
        if (path.empty()) {
            stream << text << "\n";
        } else {
            std::ofstream f(path);
            if (!f) throw InputError("cannot write file '" + path + "'");
            f << text << "\n";
        }
    }
};

// Shared flags for commands that accept a kernel either as a series file or
// as a built-in family name.
struct KernelSource {
    std::string series_path;
    std::string family;
    std::size_t depth = 0;
    std::string mode;

    void add_options(CLI::App* cmd, const char* series_flag = "--in") {
        cmd->add_option(series_flag, series_path, "kernel coefficient series (JSON)");
        cmd->add_option("--family", family, "built-in family: zeta1|zeta2|zeta3|prime");
        cmd->add_option("--depth", depth, "truncation depth");
        cmd->add_option("--mode", mode, "scalar mode: rational|real64");
    }

    KernelSpec load_spec() const {
        if (series_path.empty() == family.empty())
            throw InputError("provide exactly one kernel source (series file or --family)");
        if (!series_path.empty()) {
            DirichletSeries a = series_from_json(load_json_file(series_path));
            if (depth > 0 && depth < a.depth()) a = a.truncated(depth);
            if (!mode.empty()) {
                const ScalarMode want = scalar_mode_from_string(mode);
                if (want == ScalarMode::real64 && a.mode() == ScalarMode::exact_rational)
                    a = a.to_real64();
                else if (want != a.mode())
                    throw ModeError("cannot lift a real64 series to rational mode");
            }
            return KernelSpec(std::move(a));
        }
        const FamilyId id = family_from_name(family);
        const ScalarMode m =
            mode.empty() ? family_default_mode(id) : scalar_mode_from_string(mode);
        return family_coefficients(id, depth > 0 ? depth : default_depth(), m);
    }

    std::unique_ptr<KernelEvaluator> load_evaluator() const {
        if (series_path.empty() == family.empty())
            throw InputError("provide exactly one kernel source (series file or --family)");
        if (!family.empty())
            return std::make_unique<FamilyKernel>(family_from_name(family));
        return std::make_unique<SeriesKernel>(
            SeriesKernel::assuming_observed_bound(load_spec()));
    }
};

std::vector<std::uint64_t> parse_integer_list(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const unsigned long long v = std::stoull(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw InputError("cannot parse integer list entry '" + item + "'");
        }
    }
    if (out.empty()) throw InputError("empty integer list");
    return out;
}

std::vector<double> parse_real_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw InputError("cannot parse weight list entry '" + item + "'");
        }
    }
    return out;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Dirichlet series kernels with the complete Pick property"};
    app.require_subcommand(1);
    app.fallthrough(); // accept global flags (--pretty, --out) after subcommands

    bool pretty = false;
    std::string out_path;
    app.add_flag("--pretty", pretty, "indent JSON output");
    app.add_option("--out", out_path, "write JSON output to a file instead of stdout");

    double tol = 1e-9;

    // series {convolve|invert}
    auto* series = app.add_subcommand("series", "series arithmetic");
    series->require_subcommand(1);
    auto* conv = series->add_subcommand("convolve", "Dirichlet convolution");
    std::string conv_a, conv_b;
    std::size_t series_depth = 0;
    conv->add_option("--a", conv_a, "left series (JSON)")->required();
    conv->add_option("--b", conv_b, "right series (JSON)")->required();
    conv->add_option("--depth", series_depth, "truncate the result");
    auto* inv = series->add_subcommand("invert", "series inverse under convolution");
    std::string inv_in;
    double zero_tol = 1e-12;
    inv->add_option("--in", inv_in, "series (JSON)")->required();
    inv->add_option("--depth", series_depth, "truncate the input");
    inv->add_option("--zero-tol", zero_tol, "real64 unit tolerance for a_1");

    // pick {check|alpha|growth}
    auto* pick = app.add_subcommand("pick", "complete Pick analysis");
    pick->require_subcommand(1);
    KernelSource pick_src;
    auto* pcheck = pick->add_subcommand("check", "coefficient test c_n <= 0");
    pick_src.add_options(pcheck);
    pcheck->add_option("--tol", tol, "real64 violation tolerance");
    auto* palpha = pick->add_subcommand("alpha", "coefficients of 1 - 1/k");
    KernelSource alpha_src;
    alpha_src.add_options(palpha);
    auto* pgrowth = pick->add_subcommand("growth", "kernel growth inequalities");
    KernelSource growth_src;
    std::size_t n_max = 20, k_max = 10;
    growth_src.add_options(pgrowth);
    pgrowth->add_option("--n-max", n_max, "largest base n");
    pgrowth->add_option("--k-max", k_max, "largest exponent k");

    // family
    auto* fam = app.add_subcommand("family", "built-in kernel family coefficients");
    std::string fam_id, fam_mode;
    std::size_t fam_depth = 0;
    fam->add_option("--id", fam_id, "zeta1|zeta2|zeta3|prime")->required();
    fam->add_option("--depth", fam_depth, "truncation depth");
    fam->add_option("--mode", fam_mode, "rational|real64");

    // embed {eval|coeffs|norm|from-kernel}
    auto* embed = app.add_subcommand("embed", "ball embedding operations");
    embed->require_subcommand(1);
    std::string embed_spec, embed_point_text, embed_series;
    auto* eeval = embed->add_subcommand("eval", "evaluate f(s)");
    eeval->add_option("--spec", embed_spec, "embedding (JSON)")->required();
    eeval->add_option("--point", embed_point_text, "complex point, e.g. \"1.0+0.5i\"")
        ->required();
    auto* ecoeffs = embed->add_subcommand("coeffs", "induced kernel coefficients");
    std::size_t embed_depth = 0;
    ecoeffs->add_option("--spec", embed_spec, "embedding (JSON)")->required();
    ecoeffs->add_option("--depth", embed_depth, "truncation depth");
    auto* enorm = embed->add_subcommand("norm", "norm of a Dirichlet series element");
    enorm->add_option("--spec", embed_spec, "embedding (JSON)")->required();
    enorm->add_option("--series", embed_series, "element coefficients (JSON)")->required();
    auto* efrom = embed->add_subcommand("from-kernel", "embedding with weights sqrt(alpha_n)");
    KernelSource efrom_src;
    efrom_src.add_options(efrom, "--in");

    // indep {check|rank|witness}
    auto* indep = app.add_subcommand("indep", "multiplicative independence");
    indep->require_subcommand(1);
    std::string indep_n, indep_b, witness_out;
    auto* icheck = indep->add_subcommand("check", "is the list independent?");
    icheck->add_option("--n", indep_n, "comma-separated integers >= 2")->required();
    icheck->add_option("--b", indep_b, "comma-separated positive weights");
    icheck->add_option("--witness", witness_out, "write the witness JSON here if dependent");
    auto* irank = indep->add_subcommand("rank", "multiplicative rank d'");
    irank->add_option("--n", indep_n, "comma-separated integers >= 2")->required();
    auto* iwitness = indep->add_subcommand("witness", "dependence witness polynomial");
    iwitness->add_option("--n", indep_n, "comma-separated integers >= 2")->required();
    iwitness->add_option("--b", indep_b, "comma-separated positive weights");

    // mcq / pickfeas
    auto* mcq = app.add_subcommand("mcq", "one-positive-eigenvalue test");
    KernelSource mcq_src;
    std::string points_path, targets_path;
    mcq_src.add_options(mcq, "--kernel");
    mcq->add_option("--points", points_path, "points (JSON array)")->required();
    mcq->add_option("--tol", tol, "eigenvalue classification tolerance");
    auto* feas = app.add_subcommand("pickfeas", "matrix-valued Pick feasibility");
    KernelSource feas_src;
    feas_src.add_options(feas, "--kernel");
    feas->add_option("--points", points_path, "points (JSON array)")->required();
    feas->add_option("--targets", targets_path, "target matrices (JSON)")->required();
    feas->add_option("--tol", tol, "PSD tolerance");

    auto* verify = app.add_subcommand("verify", "run the full verification suite");

    std::vector<const char*> argv;
    argv.push_back("pickdirichlet");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    const Output output{out, pretty, out_path};
    try {
        if (conv->parsed()) {
            DirichletSeries a = series_from_json(load_json_file(conv_a));
            DirichletSeries b = series_from_json(load_json_file(conv_b));
            DirichletSeries r = convolve(a, b);
            if (series_depth > 0 && series_depth < r.depth())
                r = r.truncated(series_depth);
            output.emit(series_to_json(r));
        } else if (inv->parsed()) {
            DirichletSeries a = series_from_json(load_json_file(inv_in));
            if (series_depth > 0 && series_depth < a.depth())
                a = a.truncated(series_depth);
            output.emit(series_to_json(invert(a, zero_tol)));
        } else if (pcheck->parsed()) {
            const KernelSpec spec = pick_src.load_spec();
            json j = verdict_to_json(check_complete_pick(
                spec, pcheck->count("--tol") ? std::optional<double>(tol) : std::nullopt));
            if (!(spec.scale() == Scalar::one(spec.mode())))
                j["scale"] = spec.scale().str();
            output.emit(j);
        } else if (palpha->parsed()) {
            output.emit(series_to_json(alpha_coefficients(alpha_src.load_spec())));
        } else if (pgrowth->parsed()) {
            output.emit(growth_report_to_json(
                growth_certificate(growth_src.load_spec(), n_max, k_max)));
        } else if (fam->parsed()) {
            const FamilyId id = family_from_name(fam_id);
            const ScalarMode mode = fam_mode.empty() ? family_default_mode(id)
                                                     : scalar_mode_from_string(fam_mode);
            const KernelSpec spec = family_coefficients(
                id, fam_depth > 0 ? fam_depth : default_depth(), mode);
            output.emit(series_to_json(spec.coefficients()));
        } else if (eeval->parsed()) {
            const Embedding e = embedding_from_json(load_json_file(embed_spec));
            const PointEvaluation pe = embed_point(e, parse_complex(embed_point_text));
            json vec = json::array();
            for (const auto& v : pe.vector) vec.push_back(complex_to_json(v));
            output.emit(json{{"s", complex_to_json(pe.s)},
                             {"vector", vec},
                             {"tail_norm_bound", pe.tail_norm_bound}});
        } else if (ecoeffs->parsed()) {
            const Embedding e = embedding_from_json(load_json_file(embed_spec));
            const KernelSpec spec =
                kernel_coefficients(e, embed_depth > 0 ? embed_depth : default_depth());
            output.emit(series_to_json(spec.coefficients()));
        } else if (enorm->parsed()) {
            const Embedding e = embedding_from_json(load_json_file(embed_spec));
            const DirichletSeries gamma = series_from_json(load_json_file(embed_series));
            const Scalar norm_sq = norm_of(e, gamma);
            json j{{"norm_sq", norm_sq.is_rational() ? json(norm_sq.str())
                                                     : json(norm_sq.to_double())}};
            output.emit(j);
        } else if (efrom->parsed()) {
            output.emit(embedding_to_json(embedding_from_kernel(efrom_src.load_spec())));
        } else if (icheck->parsed()) {
            const auto n_list = parse_integer_list(indep_n);
            const auto weights = indep_b.empty() ? std::vector<double>{}
                                                 : parse_real_list(indep_b);
            const RankResult rank = multiplicative_rank(n_list);
            const auto witness = dependence_witness(n_list, weights);
            if (!witness_out.empty() && witness) {
                std::ofstream f(witness_out);
                if (!f) throw InputError("cannot write file '" + witness_out + "'");
                f << witness_to_json(*witness).dump(2) << "\n";
            }
            output.emit(json{{"independent", rank.rank == n_list.size()},
                             {"rank", rank.rank}});
        } else if (irank->parsed()) {
            const auto n_list = parse_integer_list(indep_n);
            const RankResult rank = multiplicative_rank(n_list);
            json rows = json::array();
            for (const auto& row : rank.matrix.rows) rows.push_back(row);
            output.emit(json{{"rank", rank.rank},
                             {"generators", rank.matrix.generators},
                             {"primes", rank.matrix.primes},
                             {"matrix", rows}});
        } else if (iwitness->parsed()) {
            const auto n_list = parse_integer_list(indep_n);
            const auto weights = indep_b.empty() ? std::vector<double>{}
                                                 : parse_real_list(indep_b);
            const auto witness = dependence_witness(n_list, weights);
            output.emit(json{{"independent", !witness.has_value()},
                             {"witness", witness ? witness_to_json(*witness) : json()}});
        } else if (mcq->parsed()) {
            const auto evaluator = mcq_src.load_evaluator();
            const auto points = points_from_json(load_json_file(points_path));
            const McqResult r = mcq_test(*evaluator, points, tol);
            output.emit(json{{"passes", r.passes}, {"inertia", inertia_to_json(r.inertia)}});
        } else if (feas->parsed()) {
            const auto evaluator = feas_src.load_evaluator();
            const auto points = points_from_json(load_json_file(points_path));
            const auto targets = matrix_list_from_json(load_json_file(targets_path));
            const FeasibilityResult r = pick_feasibility(*evaluator, points, targets, tol);
            output.emit(json{{"feasible", r.feasible},
                             {"min_eigenvalue", r.min_eigenvalue}});
        } else if (verify->parsed()) {
            const auto results = run_acceptance_suite(out);
            return all_passed(results) ? 0 : 1;
        }
        return 0;
    } catch (const InputError& e) {
        out << json{{"error", {{"type", "InputError"}, {"message", e.what()}}}}.dump()
            << "\n";
        err << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        out << json{{"error", {{"type", "InputError"}, {"message", e.what()}}}}.dump()
            << "\n";
        err << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        out << json{{"error", {{"type", e.kind()}, {"message", e.what()}}}}.dump()
            << "\n";
        err << e.what() << "\n";
        return 1;
    }
}

} // namespace pickdirichlet
