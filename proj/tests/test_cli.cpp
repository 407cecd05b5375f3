#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "halfdm/cli.hpp"
#include "halfdm/io.hpp"

using namespace halfdm;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Value of "key: value" in a report.
std::string field(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  const std::string prefix = key + ": ";
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  FAIL("missing field " << key);
  return {};
}

double number(const std::string& report, const std::string& key) { return std::stod(field(report, key)); }

nlohmann::json summary(const std::string& report) {
  const auto at = report.find("# summary\n");
  REQUIRE(at != std::string::npos);
  return nlohmann::json::parse(report.substr(at + 10));
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("halfdm_cli_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

// Runs the installed-style binary, capturing stdout.
Result run_tool(const std::string& args) {
  Result r;
  const std::string cmd = std::string(HALFDM_TOOL_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

ComplexMatrix singlet() {
  ComplexVector psi(4);
  psi << 0, 1, -1, 0;
  psi /= std::sqrt(2.0);
  return psi * psi.adjoint();
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == cli::kExitInputError);
  CHECK(run({"frobnicate"}).code == cli::kExitInputError);
  const Result unknown = run({"transpose-check", "--L", "2", "--bogus"});
  CHECK(unknown.code == cli::kExitInputError);
  CHECK(unknown.err.find("transpose-check") != std::string::npos);
  CHECK(run({"choi", "--map", "nope", "--out", "x.json"}).code == cli::kExitInputError);
  CHECK(run({"classify", "--choi", "/nonexistent.json", "--dims", "2,2"}).code == cli::kExitInputError);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("transpose-check") {
  for (const char* L : {"2", "5"}) {
    const Result r = run({"transpose-check", "--L", L});
    REQUIRE(r.code == 0);
    CHECK(number(r.out, "max_deviation") < 1e-12);
    CHECK(field(r.out, "trials") == "100");
  }
  CHECK(run({"transpose-check", "--L", "1"}).code == cli::kExitInputError);
}

TEST_CASE("choi, classify and kraus on catalog maps") {
  TempDir tmp;
  REQUIRE(run({"choi", "--map", "transpose", "--L", "2", "--out", tmp / "x.json"}).code == 0);
  REQUIRE(run({"choi", "--map", "identity", "--L", "2", "--out", tmp / "m.json"}).code == 0);
  REQUIRE(run({"choi", "--map", "neg-identity", "--L", "2", "--out", tmp / "neg.json"}).code == 0);
  REQUIRE(run({"choi", "--map", "trace", "--L", "3", "--s", "2", "--out", tmp / "tr.json"}).code == 0);
  CHECK(run({"choi", "--map", "reduction", "--L", "3", "--s", "2", "--out", tmp / "bad.json"}).code ==
        cli::kExitInputError);
  CHECK((io::read_choi_file(tmp / "x.json").matrix() - swap_operator(2).matrix()).norm() == 0.0);
  CHECK(io::read_choi_file(tmp / "tr.json").dims() == BipartiteDims(2, 3));

  const Result x = run({"classify", "--choi", tmp / "x.json", "--dims", "2,2"});
  CHECK(x.code == 0);
  CHECK(field(x.out, "verdict") == "PositiveNotCP");
  CHECK(field(x.out, "certificate").rfind("heuristic", 0) == 0);
  CHECK(number(x.out, "min_eigenvalue") == doctest::Approx(-1.0));
  CHECK(fs::exists(field(x.out, "witness_eigenvector")));
  CHECK(run({"classify", "--choi", tmp / "x.json", "--dims", "2,2", "--strict"}).code == 0);

  const Result m = run({"classify", "--choi", tmp / "m.json", "--dims", "2,2"});
  CHECK(field(m.out, "verdict") == "CP");

  const Result neg = run({"classify", "--choi", tmp / "neg.json", "--dims", "2,2", "--witness-prefix", tmp / "w"});
  CHECK(neg.code == 0);
  CHECK(field(neg.out, "verdict") == "NotPositive");
  CHECK(fs::exists(tmp / "w_alpha.json"));
  CHECK(fs::exists(tmp / "w_beta.json"));
  CHECK(run({"classify", "--choi", tmp / "neg.json", "--dims", "2,2", "--strict"}).code == cli::kExitNegative);
  CHECK(run({"classify", "--choi", tmp / "x.json", "--dims", "2,3"}).code == cli::kExitInputError);

  const Result k = run({"kraus", "--choi", tmp / "tr.json", "--dims", "2,3", "--out-dir", tmp / "k"});
  CHECK(k.code == 0);
  CHECK(field(k.out, "positive_count") == "6");
  CHECK(field(k.out, "trace_preserving") == "false");
  const SignedKrausRep rep = io::read_signed_rep(field(k.out, "manifest"));
  CHECK(rep.positive.size() == 6);
  const Result kx = run({"kraus", "--choi", tmp / "x.json", "--dims", "2,2", "--out-dir", tmp / "kx"});
  CHECK(kx.code == 0);
  CHECK(field(kx.out, "negative_count") == "1");
  CHECK(number(kx.out, "max_reconstruction_error") < 1e-9);
  CHECK(run({"kraus", "--choi", tmp / "x.json", "--dims", "2,2", "--out-dir", tmp / "ky", "--strict"}).code ==
        cli::kExitNegative);
}

TEST_CASE("apply") {
  TempDir tmp;
  REQUIRE(run({"choi", "--map", "reduction", "--L", "2", "--out", tmp / "r.json"}).code == 0);
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = 0.75;
  rho(1, 1) = 0.25;
  rho(0, 1) = Complex(0.1, 0.2);
  rho(1, 0) = Complex(0.1, -0.2);
  io::write_matrix_file(tmp / "rho.json", rho);
  const Result r = run({"apply", "--choi", tmp / "r.json", "--dims", "2,2", "--state", tmp / "rho.json", "--out",
                        tmp / "img.json"});
  REQUIRE(r.code == 0);
  const ComplexMatrix img = io::read_matrix_file(tmp / "img.json").matrix;
  CHECK((img - (ComplexMatrix::Identity(2, 2) - rho)).norm() < 1e-14);
  CHECK(number(r.out, "trace") == doctest::Approx(1.0));
}

TEST_CASE("detect") {
  TempDir tmp;
  io::write_matrix_file(tmp / "singlet.json", singlet());
  const Result bell = run({"detect", "--state", tmp / "singlet.json", "--dims", "2,2", "--map", "transpose"});
  REQUIRE(bell.code == 0);
  CHECK(field(bell.out, "detected") == "true");
  CHECK(number(bell.out, "min_eig") == doctest::Approx(-0.5));

  REQUIRE(run({"upb", "--build", "tiles", "--emit", "state", "--out", tmp / "tiles.json"}).code == 0);
  const Result pt = run({"detect", "--state", tmp / "tiles.json", "--dims", "3,3", "--map", "transpose"});
  CHECK(field(pt.out, "detected") == "false");
  const Result se = run({"detect", "--state", tmp / "tiles.json", "--dims", "3,3", "--map", "upb-eps"});
  CHECK(field(se.out, "detected") == "true");
  CHECK(number(se.out, "min_eig") < 0.0);

  REQUIRE(run({"choi", "--map", "reduction", "--L", "3", "--out", tmp / "red.json"}).code == 0);
  const Result red = run({"detect", "--state", tmp / "tiles.json", "--dims", "3,3", "--map", tmp / "red.json"});
  CHECK(red.code == 0);
  CHECK(field(red.out, "detected") == "false");

  io::write_matrix_file(tmp / "notstate.json", ComplexMatrix(ComplexMatrix::Identity(4, 4)));
  CHECK(run({"detect", "--state", tmp / "notstate.json", "--dims", "2,2", "--map", "transpose"}).code ==
        cli::kExitInputError);
}

TEST_CASE("upb") {
  TempDir tmp;
  const Result st = run({"upb", "--build", "tiles", "--emit", "state", "--out", tmp / "s.json"});
  REQUIRE(st.code == 0);
  const io::MatrixDocument doc = io::read_matrix_file(tmp / "s.json");
  CHECK(doc.matrix.rows() == 9);
  CHECK(std::abs(doc.matrix.trace() - 1.0) < 1e-12);

  const Result pr = run({"upb", "--build", "tiles", "--emit", "projector", "--out", tmp / "p.json"});
  CHECK(field(pr.out, "rank") == "5");

  const Result eps = run({"upb", "--build", "tiles", "--emit", "epsilon"});
  REQUIRE(eps.code == 0);
  CHECK(number(eps.out, "epsilon") > 0.0);
  CHECK(number(eps.out, "epsilon") <= 5.0 / 9.0);
  CHECK(field(eps.out, "within_bound") == "true");
  CHECK(field(eps.out, "restarts") == "64");

  const Result map = run({"upb", "--build", "tiles", "--emit", "map", "--out", tmp / "h.json"});
  REQUIRE(map.code == 0);
  CHECK(number(map.out, "eps") == doctest::Approx(0.9 * number(map.out, "epsilon")));
  CHECK(field(run({"classify", "--choi", tmp / "h.json", "--dims", "3,3"}).out, "verdict") == "PositiveNotCP");
  CHECK(run({"upb", "--build", "tiles", "--emit", "map", "--eps", "0.5", "--out", tmp / "h2.json"}).code ==
        cli::kExitInputError);

  io::write_upb_file(tmp / "tiles_upb.json", tiles_upb());
  const Result from_file = run({"upb", "--file", tmp / "tiles_upb.json", "--emit", "epsilon"});
  CHECK(number(from_file.out, "epsilon") == number(eps.out, "epsilon"));

  io::write_text(tmp / "bad_upb.json", R"({"dims": [2, 2], "members": [
    {"alpha": {"rows": 2, "cols": 1, "data": [[1, 0], [0, 0]]}, "beta": {"rows": 2, "cols": 1, "data": [[1, 0], [0, 0]]}},
    {"alpha": {"rows": 2, "cols": 1, "data": [[1, 0], [0, 0]]}, "beta": {"rows": 2, "cols": 1, "data": [[0.6, 0], [0.8, 0]]}}]})");
  CHECK(run({"upb", "--file", tmp / "bad_upb.json", "--emit", "epsilon"}).code == cli::kExitInputError);

  std::vector<ProductPair> partial;
  for (Index i = 0; i < 2; ++i)
    for (Index k = 0; k < 2; ++k) partial.push_back({basis_vector(3, i), basis_vector(3, k)});
  io::write_upb_file(tmp / "ext.json", UPB(BipartiteDims(3, 3), partial));
  const Result ext = run({"upb", "--file", tmp / "ext.json", "--emit", "epsilon"});
  CHECK(ext.code == cli::kExitInputError);
  CHECK(field(ext.out, "within_bound") == "false");

  CHECK(run({"upb", "--emit", "epsilon"}).code == cli::kExitInputError);
  CHECK(run({"upb", "--build", "tiles", "--emit", "state"}).code == cli::kExitInputError);
}

TEST_CASE("teleport-demo") {
  TempDir tmp;
  ComplexVector psi(2);
  psi << 0.6, Complex(0.0, 0.8);
  io::write_matrix_file(tmp / "psi.json", psi);
  const Result bell = run({"teleport-demo", "--state", tmp / "psi.json"});
  REQUIRE(bell.code == 0);
  for (const char* o : {"0_0", "0_1", "1_0", "1_1"}) {
    CHECK(std::abs(number(bell.out, std::string("outcome_") + o + "_probability") - 0.25) < 1e-10);
    CHECK(std::abs(number(bell.out, std::string("outcome_") + o + "_fidelity") - 1.0) < 1e-10);
  }
  CHECK(field(bell.out, "maximally_entangled") == "true");

  ComplexMatrix t = ComplexMatrix::Zero(2, 2);
  t(0, 0) = 0.9;
  t(1, 1) = 0.436;
  io::write_hdm_file(tmp / "res.json", HalfDensityMatrix(t));
  const Result raw = run({"teleport-demo", "--resource", tmp / "res.json", "--state", tmp / "psi.json"});
  REQUIRE(raw.code == 0);
  CHECK(field(raw.out, "maximally_entangled") == "false");
  CHECK(field(raw.out, "correction").rfind("none", 0) == 0);
  CHECK(number(raw.out, "expansion_residual") < 1e-10);

  CHECK(run({"teleport-demo", "--state", tmp / "psi.json", "--basis", "other"}).code == cli::kExitInputError);
  io::write_matrix_file(tmp / "zero.json", ComplexVector(ComplexVector::Zero(2)));
  CHECK(run({"teleport-demo", "--state", tmp / "zero.json"}).code == cli::kExitInputError);
}

TEST_CASE("reports are deterministic and carry a JSON summary") {
  TempDir tmp;
  REQUIRE(run({"choi", "--map", "transpose", "--L", "3", "--out", tmp / "x.json"}).code == 0);
  const std::vector<std::string> args{"classify", "--choi", tmp / "x.json", "--dims", "3,3", "--seed", "7",
                                      "--restarts", "8"};
  const Result a = run(args);
  const Result b = run(args);
  CHECK(a.out == b.out);
  const nlohmann::json s = summary(a.out);
  CHECK(s["verdict"] == "PositiveNotCP");
  CHECK(s["seed"] == 7);
  CHECK(s["restarts"] == 8);
}

TEST_CASE("tool binary") {
  TempDir tmp;
  const Result t = run_tool("transpose-check --L 3 --seed 4");
  CHECK(t.code == 0);
  CHECK(t.out == run({"transpose-check", "--L", "3", "--seed", "4"}).out);
  CHECK(run_tool("transpose-check --L 1").code == 2);
  CHECK(run_tool("--no-such-flag").code == 2);
  REQUIRE(run_tool("choi --map neg-identity --L 2 --out " + (tmp / "n.json")).code == 0);
  CHECK(run_tool("classify --strict --dims 2,2 --choi " + (tmp / "n.json")).code == 1);
}
