#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pickdirichlet/cli.hpp"
#include "pickdirichlet/json_io.hpp"
#include "pickdirichlet/kernel_families.hpp"

using namespace pickdirichlet;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
    json parsed() const { return json::parse(out); }
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("/tmp/pickdirichlet_test_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

} // namespace

TEST_CASE("series JSON round trip in both modes") {
    DirichletSeries q(ScalarMode::exact_rational, 4);
    q.set(1, Scalar::rational(1, 1));
    q.set(2, Scalar::rational(-3, 7));
    q.set(4, Scalar::rational(5, 2));
    const json j = series_to_json(q);
    CHECK(j["N"] == 4);
    CHECK(j["mode"] == "rational");
    CHECK(j["coeffs"][1] == "-3/7");
    CHECK(series_from_json(j) == q);

    DirichletSeries r(ScalarMode::real64, 3);
    r.set(2, Scalar::real(0.25));
    const json jr = series_to_json(r);
    CHECK(jr["coeffs"][1] == 0.25);
    CHECK(series_from_json(jr) == r);
}

TEST_CASE("series JSON schema violations") {
    CHECK_THROWS_AS(series_from_json(json::parse(R"({"mode":"rational","coeffs":[]})")),
                    InputError);
    CHECK_THROWS_AS(
        series_from_json(json::parse(R"({"N":2,"mode":"rational","coeffs":["1"]})")),
        InputError);
    CHECK_THROWS_AS(
        series_from_json(json::parse(R"({"N":1,"mode":"decimal","coeffs":[1]})")),
        InputError);
    CHECK_THROWS_AS(
        series_from_json(json::parse(R"({"N":1,"mode":"rational","coeffs":["x/y"]})")),
        InputError);
    // Non-integer numbers cannot enter a rational series.
    CHECK_THROWS_AS(
        series_from_json(json::parse(R"({"N":1,"mode":"rational","coeffs":[0.5]})")),
        InputError);
    // Integers can.
    CHECK(series_from_json(json::parse(R"({"N":1,"mode":"rational","coeffs":[3]})"))
              .at(1) == Scalar::rational(3, 1));
}

TEST_CASE("complex literal parsing") {
    CHECK(parse_complex("1.0+0.5i") == std::complex<double>(1.0, 0.5));
    CHECK(parse_complex("1-2i") == std::complex<double>(1.0, -2.0));
    CHECK(parse_complex("3i") == std::complex<double>(0.0, 3.0));
    CHECK(parse_complex("-i") == std::complex<double>(0.0, -1.0));
    CHECK(parse_complex("2") == std::complex<double>(2.0, 0.0));
    CHECK(parse_complex("-1.5+2e-3i") == std::complex<double>(-1.5, 2e-3));
    CHECK(parse_complex(" 0.5 - 0.25i ") == std::complex<double>(0.5, -0.25));
    CHECK_THROWS_AS(parse_complex("foo"), InputError);

    CHECK(complex_from_json(json::parse("[1.0, -2.5]")) ==
          std::complex<double>(1.0, -2.5));
    CHECK(complex_from_json(json("1+2i")) == std::complex<double>(1.0, 2.0));
    CHECK(complex_from_json(json(3.5)) == std::complex<double>(3.5, 0.0));
    CHECK_THROWS_AS(complex_from_json(json::parse("[1]")), InputError);
}

TEST_CASE("embedding and witness JSON round trips") {
    const Embedding e = Embedding::from_weights({0.5, 0.25}, {2, 5});
    const json j = embedding_to_json(e);
    const Embedding back = embedding_from_json(j);
    CHECK(back.size() == 2);
    CHECK(back.generators()[1] == 5);
    CHECK(back.weight(0) == doctest::Approx(0.5));

    const json w = json::parse(
        R"({"I":[0,1],"J":[2],"kappa":[1,1,1],"mu":[1,1,0],"nu":[0,0,1]})");
    const Witness parsed = witness_from_json(w);
    CHECK(parsed.I == std::vector<std::size_t>{0, 1});
    CHECK(witness_to_json(parsed) == w);
    CHECK_THROWS_AS(witness_from_json(json::parse(R"({"I":[0]})")), InputError);
}

TEST_CASE("cli: family coefficients match the reference prefix") {
    const CliRun r = cli({"family", "--id", "zeta1", "--depth", "8"});
    REQUIRE(r.code == 0);
    const json j = r.parsed();
    CHECK(j["mode"] == "rational");
    CHECK(j["coeffs"] ==
          json::parse(R"(["1","1","1","2","1","3","1","4"])"));

    // Byte-identical across runs.
    CHECK(cli({"family", "--id", "zeta1", "--depth", "8"}).out == r.out);
}

TEST_CASE("cli: pick check on a built-in family and on a series file") {
    const CliRun r = cli({"pick", "check", "--family", "zeta1", "--depth", "100"});
    REQUIRE(r.code == 0);
    CHECK(r.parsed() ==
          json::parse(R"({"complete_pick":true,"depth":100,"first_violation":null})"));

    const std::string zeta = write_temp(
        "zeta.json", R"({"N":10,"mode":"rational","coeffs":[1,1,1,1,1,1,1,1,1,1]})");
    const CliRun rz = cli({"pick", "check", "--in", zeta});
    REQUIRE(rz.code == 0);
    CHECK(rz.parsed()["complete_pick"] == false);
    CHECK(rz.parsed()["first_violation"]["n"] == 6);
    CHECK(rz.parsed()["first_violation"]["c_n"] == "1");
}

TEST_CASE("cli: series invert produces the Moebius prefix") {
    const std::string zeta = write_temp(
        "ones6.json", R"({"N":8,"mode":"rational","coeffs":[1,1,1,1,1,1,1,1]})");
    const CliRun r = cli({"series", "invert", "--in", zeta, "--depth", "6"});
    REQUIRE(r.code == 0);
    CHECK(r.parsed()["coeffs"] == json::parse(R"(["1","-1","-1","0","-1","1"])"));
}

TEST_CASE("cli: series convolve") {
    const std::string ones = write_temp(
        "ones4.json", R"({"N":4,"mode":"rational","coeffs":[1,1,1,1]})");
    const CliRun r = cli({"series", "convolve", "--a", ones, "--b", ones});
    REQUIRE(r.code == 0);
    CHECK(r.parsed()["coeffs"] == json::parse(R"(["1","2","2","3"])"));
}

TEST_CASE("cli: indep subcommands") {
    const CliRun r = cli({"indep", "check", "--n", "2,3,6"});
    REQUIRE(r.code == 0);
    CHECK(r.parsed() == json::parse(R"({"independent":false,"rank":2})"));

    const std::string wpath = "/tmp/pickdirichlet_test_witness.json";
    std::remove(wpath.c_str());
    const CliRun rw =
        cli({"indep", "check", "--n", "4,8", "--witness", wpath});
    REQUIRE(rw.code == 0);
    std::ifstream wf(wpath);
    REQUIRE(wf.good());
    const json w = json::parse(wf);
    CHECK(w["mu"] == json::parse("[3,0]"));
    CHECK(w["nu"] == json::parse("[0,2]"));

    const CliRun rr = cli({"indep", "rank", "--n", "4,8"});
    CHECK(rr.parsed()["rank"] == 1);

    const CliRun ri = cli({"indep", "witness", "--n", "2,3,5"});
    CHECK(ri.parsed()["independent"] == true);
    CHECK(ri.parsed()["witness"].is_null());

    CHECK(cli({"indep", "check", "--n", "2,x"}).code == 2);
    CHECK(cli({"indep", "check", "--n", "1,2"}).code == 1);
}

TEST_CASE("cli: embed subcommands") {
    const std::string spec = write_temp(
        "embed.json",
        R"({"b":[0.5,0.5],"n":[2,3],"normalized":false,"truncated_infinite":false})");

    const CliRun ev = cli({"embed", "eval", "--spec", spec, "--point", "1.0+0.0i"});
    REQUIRE(ev.code == 0);
    CHECK(ev.parsed()["vector"][0][0].get<double>() == doctest::Approx(0.25));
    CHECK(ev.parsed()["vector"][1][0].get<double>() == doctest::Approx(0.5 / 3.0));

    const CliRun co = cli({"embed", "coeffs", "--spec", spec, "--depth", "6"});
    REQUIRE(co.code == 0);
    CHECK(co.parsed()["coeffs"][5].get<double>() == doctest::Approx(0.125));

    const std::string h = write_temp(
        "h6.json", R"({"N":6,"mode":"real64","coeffs":[0,0,0,0,0,1]})");
    const CliRun kn = cli({"embed", "norm", "--spec", spec, "--series", h});
    REQUIRE(kn.code == 0);
    CHECK(kn.parsed()["norm_sq"].get<double>() == doctest::Approx(8.0));

    const CliRun fk = cli({"embed", "from-kernel", "--family", "zeta3", "--depth", "20"});
    REQUIRE(fk.code == 0);
    CHECK(fk.parsed()["b"].size() > 0);

    // Emitted embeddings read back even when unnormalized, and evaluate
    // wherever the point stays inside the ball.
    const std::string unnorm = write_temp("unnorm.json", fk.out);
    const CliRun round = cli({"embed", "eval", "--spec", unnorm, "--point", "3.0"});
    REQUIRE(round.code == 0);
    const CliRun too_far_left =
        cli({"embed", "eval", "--spec", unnorm, "--point", "0.05"});
    CHECK(too_far_left.code == 1);

    CHECK(cli({"embed", "eval", "--spec", spec, "--point", "-1.0"}).code == 1);
}

TEST_CASE("cli: mcq and pickfeas") {
    const std::string pts = write_temp("pts.json", R"([[1.5,0.0],[2.5,0.0]])");
    const CliRun r =
        cli({"mcq", "--family", "zeta1", "--points", pts, "--tol", "1e-6"});
    REQUIRE(r.code == 0);
    CHECK(r.parsed()["passes"] == true);
    CHECK(r.parsed()["inertia"]["n_plus"] == 1);

    const std::string targets = write_temp("targets.json", R"([[[0]],[[0.2]]])");
    const CliRun f = cli({"pickfeas", "--family", "zeta1", "--points", pts,
                          "--targets", targets, "--tol", "1e-6"});
    REQUIRE(f.code == 0);
    CHECK(f.parsed()["feasible"] == true);
}

TEST_CASE("cli: exit codes and structured errors") {
    CHECK(cli({"series", "invert", "--in", "/nonexistent.json"}).code == 2);
    CHECK(cli({"nonsense"}).code == 2);
    CHECK(cli({"pick", "check"}).code == 2); // no kernel source

    const CliRun mode_err =
        cli({"family", "--id", "zeta2", "--mode", "rational", "--depth", "10"});
    CHECK(mode_err.code == 1);
    CHECK(mode_err.parsed()["error"]["type"] == "ModeError");

    const std::string zero = write_temp(
        "zero.json", R"({"N":3,"mode":"rational","coeffs":[0,1,1]})");
    const CliRun unit_err = cli({"series", "invert", "--in", zero});
    CHECK(unit_err.code == 1);
    CHECK(unit_err.parsed()["error"]["type"] == "NonUnitError");

    const std::string real_series = write_temp(
        "real3.json", R"({"N":3,"mode":"real64","coeffs":[1,0.5,0.25]})");
    const CliRun lift_err =
        cli({"pick", "check", "--in", real_series, "--mode", "rational"});
    CHECK(lift_err.code == 1);
    CHECK(lift_err.parsed()["error"]["type"] == "ModeError");
}

TEST_CASE("cli: PICKDIRICHLET_DEPTH sets the default depth") {
    setenv("PICKDIRICHLET_DEPTH", "37", 1);
    const CliRun r = cli({"pick", "check", "--family", "zeta1"});
    unsetenv("PICKDIRICHLET_DEPTH");
    REQUIRE(r.code == 0);
    CHECK(r.parsed()["depth"] == 37);

    setenv("PICKDIRICHLET_DEPTH", "bogus", 1);
    const CliRun bad = cli({"pick", "check", "--family", "zeta1"});
    unsetenv("PICKDIRICHLET_DEPTH");
    CHECK(bad.code == 2);
}

TEST_CASE("cli: --out writes the JSON to a file") {
    const std::string path = "/tmp/pickdirichlet_test_out.json";
    std::remove(path.c_str());
    const CliRun r = cli({"--out", path, "family", "--id", "zeta1", "--depth", "4"});
    REQUIRE(r.code == 0);
    std::ifstream f(path);
    REQUIRE(f.good());
    CHECK(json::parse(f)["coeffs"] == json::parse(R"(["1","1","1","2"])"));
}

TEST_CASE("cli: growth and alpha subcommands") {
    const CliRun g = cli({"pick", "growth", "--family", "zeta1", "--depth", "64",
                          "--n-max", "8", "--k-max", "6"});
    REQUIRE(g.code == 0);
    CHECK(g.parsed()["ok"] == true);
    CHECK(g.parsed()["failures"].empty());

    const CliRun a = cli({"pick", "alpha", "--family", "zeta3", "--depth", "10"});
    REQUIRE(a.code == 0);
    // alpha_n = +1 exactly on squarefree n >= 2: n = 2, 3 here.
    CHECK(a.parsed()["coeffs"][0] == "0");
    CHECK(a.parsed()["coeffs"][1] == "1");
    CHECK(a.parsed()["coeffs"][3] == "0");
}
