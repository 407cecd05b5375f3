#include "halfdm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "halfdm/catalog.hpp"
#include "halfdm/io.hpp"
#include "halfdm/random.hpp"
#include "halfdm/teleport.hpp"

namespace halfdm::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Line-oriented "key: value" report followed by a one-line JSON summary.
class Report {
 public:
  explicit Report(const std::string& command) { add("command", command); }

  void add(const std::string& key, const std::string& value) {
    lines_ << key << ": " << value << "\n";
    summary_[key] = value;
  }
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, double value) {
    lines_ << key << ": " << num(value) << "\n";
    summary_[key] = value;
  }
  void add(const std::string& key, long long value) {
    lines_ << key << ": " << value << "\n";
    summary_[key] = value;
  }
  void add(const std::string& key, bool value) {
    lines_ << key << ": " << (value ? "true" : "false") << "\n";
    summary_[key] = value;
  }
  void note(const std::string& text) { lines_ << "# " << text << "\n"; }

  void print(std::ostream& out) const {
    out << lines_.str() << "# summary\n" << summary_.dump() << "\n";
  }

 private:
  std::ostringstream lines_;
  json summary_ = json::object();
};

BipartiteDims parse_dims(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "--dims expects s,L");
  }
  try {
    std::size_t used_s = 0;
    std::size_t used_l = 0;
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    const long s = std::stol(a, &used_s);
    const long l = std::stol(b, &used_l);
    if (used_s != a.size() || used_l != b.size()) throw std::invalid_argument("trailing");
    return BipartiteDims(s, l);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "--dims expects s,L with positive integers");
  }
}

ChoiMatrix load_choi(const std::string& path, BipartiteDims dims) {
  const io::MatrixDocument doc = io::read_matrix_file(path);
  if (doc.dims && *doc.dims != dims) {
    throw Error(ErrorCode::DimensionMismatch, "--dims disagrees with the dims stored in " + path);
  }
  return ChoiMatrix(doc.matrix, dims);
}

ComplexMatrix load_state(const std::string& path, BipartiteDims dims) {
  const ComplexMatrix rho = io::read_matrix_file(path).matrix;
  if (rho.rows() != dims.total() || rho.cols() != dims.total()) {
    throw Error(ErrorCode::DimensionMismatch, "state size does not match --dims");
  }
  return rho;
}

struct SeeSawFlags {
  int restarts = 64;
  int max_iters = 500;
  std::uint64_t seed = 0;

  SeeSawConfig config() const {
    SeeSawConfig cfg;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.seed = seed;
    return cfg;
  }
};

void add_seesaw_flags(CLI::App* cmd, SeeSawFlags& f) {
  cmd->add_option("--restarts", f.restarts, "see-saw restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", f.max_iters, "see-saw sweeps per restart")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "random seed");
}

// Tiles UPB map with rho0 = I/9; eps defaults to 0.9 times the product minimum.
UpbMap tiles_map(std::optional<double> eps, const SeeSawConfig& cfg) {
  const UPB u = tiles_upb();
  const double e = eps ? *eps : 0.9 * epsilon_of_upb(u, cfg);
  const ComplexMatrix rho0 = ComplexMatrix::Identity(9, 9) / 9.0;
  return upb_map(u, rho0, e, cfg);
}

// ---------------------------------------------------------------------------

struct ChoiArgs {
  std::string map;
  long L = 2;
  std::optional<long> s;
  std::string out;
  std::optional<double> eps;
  SeeSawFlags seesaw;
};

int cmd_choi(const ChoiArgs& a, std::ostream& out) {
  const long s = a.s.value_or(a.L);
  if (a.s && a.map != "trace" && a.map != "neg-identity" && s != a.L) {
    throw Error(ErrorCode::InvalidArgument, "--s only applies to trace and neg-identity");
  }
  Report r("choi");
  r.add("map", a.map);
  std::optional<ChoiMatrix> choi;
  if (a.map == "identity") {
    choi = identity_choi(a.L);
  } else if (a.map == "transpose") {
    choi = swap_operator(a.L);
  } else if (a.map == "reduction") {
    choi = reduction_choi(a.L);
  } else if (a.map == "trace") {
    choi = trace_choi(s, a.L);
  } else if (a.map == "neg-identity") {
    choi = negated_identity_choi(s, a.L);
  } else {
    const UpbMap m = tiles_map(a.eps, a.seesaw.config());
    r.add("eps", m.eps);
    r.add("epsilon", m.epsilon);
    r.add("d", m.d);
    choi = m.choi;
  }
  io::write_choi_file(a.out, *choi);
  r.add("dims", std::to_string(choi->dims().s) + "," + std::to_string(choi->dims().L));
  r.add("min_eigenvalue", hermitian_eig(choi->matrix()).min());
  r.add("output", a.out);
  r.print(out);
  return kExitOk;
}

struct ApplyArgs {
  std::string choi;
  std::string dims;
  std::string state;
  std::string out;
};

int cmd_apply(const ApplyArgs& a, std::ostream& out) {
  const BipartiteDims dims = parse_dims(a.dims);
  const ChoiMatrix choi = load_choi(a.choi, dims);
  const ComplexMatrix rho = io::read_matrix_file(a.state).matrix;
  const ComplexMatrix image = apply_via_choi(choi, rho);
  Report r("apply");
  r.add("input_dim", static_cast<long long>(dims.L));
  r.add("output_dim", static_cast<long long>(dims.s));
  r.add("trace", image.trace().real());
  const double asym = (image - image.adjoint()).norm();
  r.add("hermitian", asym <= kPsdTol * std::max(1.0, image.norm()));
  if (asym <= kPsdTol * std::max(1.0, image.norm())) {
    r.add("min_eigenvalue", hermitian_eig((image + image.adjoint()) * 0.5).min());
  }
  if (!a.out.empty()) {
    io::write_matrix_file(a.out, image);
    r.add("output", a.out);
  }
  r.print(out);
  if (a.out.empty()) out << io::format_matrix(image) << "\n";
  return kExitOk;
}

struct ClassifyArgs {
  std::string choi;
  std::string dims;
  bool strict = false;
  std::string witness_prefix;
  SeeSawFlags seesaw;
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  const BipartiteDims dims = parse_dims(a.dims);
  const ChoiMatrix choi = load_choi(a.choi, dims);
  const MapClass mc = classify_map(choi, a.seesaw.config());

  std::string prefix = a.witness_prefix;
  if (prefix.empty()) prefix = (fs::path(a.choi).parent_path() / fs::path(a.choi).stem()).string() + "_witness";

  Report r("classify");
  r.add("verdict", std::string(to_string(mc.verdict)));
  switch (mc.verdict) {
    case Verdict::CP: r.add("certificate", "exact: Choi matrix is positive semidefinite"); break;
    case Verdict::NotPositive: r.add("certificate", "exact: product state with negative expectation"); break;
    case Verdict::PositiveNotCP: r.add("certificate", "heuristic: no violating product state found"); break;
    case Verdict::Undetermined: r.add("certificate", "heuristic: see-saw did not converge"); break;
  }
  r.add("min_eigenvalue", mc.min_eigenvalue);
  r.add("product_min", mc.product_min);
  r.add("tolerance", mc.tolerance);
  r.add("restarts", static_cast<long long>(mc.restarts));
  r.add("iterations", static_cast<long long>(mc.iterations));
  r.add("seed", static_cast<long long>(a.seesaw.seed));
  if (mc.negative_eigenvector) {
    const std::string path = prefix + "_eigenvector.json";
    io::write_matrix_file(path, *mc.negative_eigenvector);
    r.add("witness_eigenvector", path);
  }
  if (mc.product_witness) {
    const std::string pa = prefix + "_alpha.json";
    const std::string pb = prefix + "_beta.json";
    io::write_matrix_file(pa, mc.product_witness->alpha);
    io::write_matrix_file(pb, mc.product_witness->beta);
    r.add("witness_alpha", pa);
    r.add("witness_beta", pb);
  }
  r.print(out);
  const bool negative = mc.verdict == Verdict::NotPositive || mc.verdict == Verdict::Undetermined;
  return a.strict && negative ? kExitNegative : kExitOk;
}

struct KrausArgs {
  std::string choi;
  std::string dims;
  std::string out_dir;
  bool strict = false;
};

int cmd_kraus(const KrausArgs& a, std::ostream& out) {
  const BipartiteDims dims = parse_dims(a.dims);
  const ChoiMatrix choi = load_choi(a.choi, dims);
  const PsdReport psd = is_psd(choi.matrix());
  const SignedKrausRep rep = psd ? SignedKrausRep{dims, kraus_of_cp(choi), {}} : signed_rep(choi);
  const fs::path manifest = io::write_signed_rep(a.out_dir, "kraus", rep);

  Report r("kraus");
  r.add("cp", psd.psd);
  r.add("min_eigenvalue", psd.min_eigenvalue);
  r.add("positive_count", static_cast<long long>(rep.positive.size()));
  r.add("negative_count", static_cast<long long>(rep.negative.size()));
  if (psd) {
    r.add("trace_preserving", is_trace_preserving(rep.positive));
  } else {
    r.note("map is not completely positive; wrote the signed representation");
  }
  r.add("max_reconstruction_error", (choi_of_signed(rep) - choi.matrix()).norm());
  r.add("manifest", manifest.string());
  r.print(out);
  return a.strict && !psd ? kExitNegative : kExitOk;
}

struct DetectArgs {
  std::string state;
  std::string dims;
  std::string map;
  std::optional<double> eps;
  SeeSawFlags seesaw;
};

int cmd_detect(const DetectArgs& a, std::ostream& out) {
  const BipartiteDims dims = parse_dims(a.dims);
  const ComplexMatrix rho = load_state(a.state, dims);
  Report r("detect");
  r.add("map", a.map);
  std::optional<ChoiMatrix> choi;
  if (a.map == "transpose") {
    choi = swap_operator(dims.L);
  } else if (a.map == "reduction") {
    choi = reduction_choi(dims.L);
  } else if (a.map == "upb-eps") {
    if (dims.L != 3) throw Error(ErrorCode::DimensionMismatch, "upb-eps acts on a qutrit (L = 3)");
    const UpbMap m = tiles_map(a.eps, a.seesaw.config());
    r.add("eps", m.eps);
    r.add("epsilon", m.epsilon);
    choi = m.choi;
  } else {
    choi = io::read_choi_file(a.map);
  }
  const Detection d = detect_entanglement(rho, dims, *choi);
  r.add("detected", d.detected);
  r.add("min_eig", d.min_eig);
  r.print(out);
  return kExitOk;
}

struct UpbArgs {
  std::string build;
  std::string file;
  std::string emit;
  std::string out;
  std::optional<double> eps;
  SeeSawFlags seesaw;
};

int cmd_upb(const UpbArgs& a, std::ostream& out) {
  if (a.build.empty() == a.file.empty()) {
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --build tiles or --file F");
  }
  if (a.emit != "epsilon" && a.out.empty()) {
    throw Error(ErrorCode::InvalidArgument, "--emit " + a.emit + " needs --out");
  }
  const UPB u = a.file.empty() ? tiles_upb() : io::read_upb_file(a.file);
  const SeeSawConfig cfg = a.seesaw.config();
  Report r("upb");
  r.add("source", a.file.empty() ? std::string("tiles") : a.file);
  r.add("dims", std::to_string(u.dims().s) + "," + std::to_string(u.dims().L));
  r.add("members", static_cast<long long>(u.size()));
  r.add("emit", a.emit);
  if (a.emit == "projector") {
    const ComplexMatrix p = upb_projector(u);
    io::write_matrix_file(a.out, p, u.dims());
    r.add("rank", static_cast<long long>(numerical_rank(p)));
  } else if (a.emit == "state") {
    const ComplexMatrix rho = upb_state(u);
    io::write_matrix_file(a.out, rho, u.dims());
    r.add("trace", rho.trace().real());
    r.add("rank", static_cast<long long>(numerical_rank(rho)));
    r.add("ppt_min_eigenvalue", is_ppt(rho, u.dims()).min_eigenvalue);
  } else if (a.emit == "map") {
    const double e = a.eps ? *a.eps : 0.9 * epsilon_of_upb(u, cfg);
    const Index n = u.dims().total();
    const UpbMap m = upb_map(u, ComplexMatrix::Identity(n, n) / static_cast<double>(n), e, cfg);
    io::write_choi_file(a.out, m.choi);
    r.add("eps", m.eps);
    r.add("epsilon", m.epsilon);
    r.add("d", m.d);
  } else {
    const ProductMinimum pm = upb_product_minimum(u, cfg);
    const double bound = static_cast<double>(u.size()) / static_cast<double>(u.dims().total());
    r.add("epsilon", pm.value);
    r.add("bound", bound);
    r.add("restarts", static_cast<long long>(pm.restarts));
    r.add("iterations", static_cast<long long>(pm.iterations));
    r.add("seed", static_cast<long long>(a.seesaw.seed));
    const bool ok = pm.value > kPsdTol && pm.value <= bound + kPsdTol;
    r.add("within_bound", ok);
    if (!ok) {
      r.print(out);
      throw Error(ErrorCode::BoundViolated, "product minimum outside (0, S/sL]; basis is extendible");
    }
  }
  if (!a.out.empty()) r.add("output", a.out);
  r.print(out);
  return kExitOk;
}

struct TransposeCheckArgs {
  long L = 0;
  int trials = 100;
  std::uint64_t seed = 0;
};

int cmd_transpose_check(const TransposeCheckArgs& a, std::ostream& out) {
  if (a.L < 2) throw Error(ErrorCode::LTooSmall, "--L must be at least 2");
  Rng rng(a.seed);
  double worst = 0.0;
  for (int t = 0; t < a.trials; ++t) {
    const ComplexMatrix rho = random_complex_matrix(rng, a.L, a.L);
    worst = std::max(worst, (rho.transpose() - transpose_via_sigma(rho)).norm());
  }
  Report r("transpose-check");
  r.add("L", static_cast<long long>(a.L));
  r.add("trials", static_cast<long long>(a.trials));
  r.add("seed", static_cast<long long>(a.seed));
  r.add("max_deviation", worst);
  r.print(out);
  return kExitOk;
}

struct TeleportArgs {
  std::string resource = "bell";
  std::string state;
  std::string basis = "bell";
};

std::string vector_text(const ComplexVector& v) {
  std::string s = "[";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += "[" + num(v(i).real()) + ", " + num(v(i).imag()) + "]";
  }
  return s + "]";
}

int cmd_teleport(const TeleportArgs& a, std::ostream& out) {
  const ComplexVector psi = io::read_vector_file(a.state);
  const Index s = psi.size();
  const HalfDensityMatrix resource =
      a.resource == "bell"
          ? HalfDensityMatrix(ComplexMatrix(ComplexMatrix::Identity(s, s) / std::sqrt(static_cast<double>(s))))
          : io::read_hdm_file(a.resource);
  const std::vector<HalfDensityMatrix> basis = bell_basis(s);
  const TeleportReport rep = teleport(resource, psi, basis);

  Report r("teleport-demo");
  r.add("resource", a.resource);
  r.add("basis", a.basis);
  r.add("s", static_cast<long long>(s));
  r.add("maximally_entangled", rep.maximally_entangled);
  r.add("correction", rep.corrected ? std::string("inverse of the conditional operator")
                                    : std::string("none: resource not maximally entangled, raw conditionals"));
  for (const auto& o : rep.outcomes) {
    const std::string key = "outcome_" + std::to_string(o.k) + "_" + std::to_string(o.l);
    r.add(key + "_probability", o.probability);
    r.add(key + "_fidelity", o.fidelity);
    r.add(key + "_conditional", vector_text(o.conditional));
  }
  r.add("total_probability", rep.total_probability);
  r.add("expansion_residual", rep.expansion_residual);
  r.print(out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Half-density-matrix toolkit for Hermitian maps and entanglement detection", "halfdm"};
  app.require_subcommand(1);

  ChoiArgs choi;
  auto* c_choi = app.add_subcommand("choi", "write a catalog Choi matrix");
  c_choi->add_option("--map", choi.map, "map name")
      ->required()
      ->check(CLI::IsMember({"identity", "transpose", "reduction", "trace", "neg-identity", "upb-eps"}));
  c_choi->add_option("--L", choi.L, "input dimension")->check(CLI::PositiveNumber);
  c_choi->add_option("--s", choi.s, "output dimension (trace, neg-identity)")->check(CLI::PositiveNumber);
  c_choi->add_option("--out", choi.out, "output file")->required();
  c_choi->add_option("--eps", choi.eps, "eps for upb-eps");
  add_seesaw_flags(c_choi, choi.seesaw);

  ApplyArgs apply;
  auto* c_apply = app.add_subcommand("apply", "apply a Choi matrix to a state");
  c_apply->add_option("--choi", apply.choi)->required();
  c_apply->add_option("--dims", apply.dims, "s,L")->required();
  c_apply->add_option("--state", apply.state)->required();
  c_apply->add_option("--out", apply.out);

  ClassifyArgs classify;
  auto* c_classify = app.add_subcommand("classify", "classify a Hermitian map");
  c_classify->add_option("--choi", classify.choi)->required();
  c_classify->add_option("--dims", classify.dims, "s,L")->required();
  c_classify->add_flag("--strict", classify.strict, "exit 1 unless the map is positive");
  c_classify->add_option("--witness-prefix", classify.witness_prefix, "path prefix for witness files");
  add_seesaw_flags(c_classify, classify.seesaw);

  KrausArgs kraus;
  auto* c_kraus = app.add_subcommand("kraus", "extract the operator-sum (or signed) representation");
  c_kraus->add_option("--choi", kraus.choi)->required();
  c_kraus->add_option("--dims", kraus.dims, "s,L")->required();
  c_kraus->add_option("--out-dir", kraus.out_dir)->required();
  c_kraus->add_flag("--strict", kraus.strict, "exit 1 if the map is not CP");

  DetectArgs detect;
  auto* c_detect = app.add_subcommand("detect", "entanglement detection with a positive map");
  c_detect->add_option("--state", detect.state)->required();
  c_detect->add_option("--dims", detect.dims, "s,L")->required();
  c_detect->add_option("--map", detect.map, "transpose | reduction | upb-eps | FILE")->required();
  c_detect->add_option("--eps", detect.eps, "eps for upb-eps");
  add_seesaw_flags(c_detect, detect.seesaw);

  UpbArgs upb;
  auto* c_upb = app.add_subcommand("upb", "unextendible product basis artifacts");
  c_upb->add_option("--build", upb.build)->check(CLI::IsMember({"tiles"}));
  c_upb->add_option("--file", upb.file);
  c_upb->add_option("--emit", upb.emit)
      ->required()
      ->check(CLI::IsMember({"projector", "state", "map", "epsilon"}));
  c_upb->add_option("--out", upb.out);
  c_upb->add_option("--eps", upb.eps);
  add_seesaw_flags(c_upb, upb.seesaw);

  TransposeCheckArgs tcheck;
  auto* c_tcheck = app.add_subcommand("transpose-check", "verify the sigma-basis transposition identity");
  c_tcheck->add_option("--L", tcheck.L)->required();
  c_tcheck->add_option("--trials", tcheck.trials)->check(CLI::PositiveNumber);
  c_tcheck->add_option("--seed", tcheck.seed);

  TeleportArgs tele;
  auto* c_tele = app.add_subcommand("teleport-demo", "teleportation through the HDM expansion");
  c_tele->add_option("--resource", tele.resource, "bell | HDM file");
  c_tele->add_option("--state", tele.state)->required();
  c_tele->add_option("--basis", tele.basis)->check(CLI::IsMember({"bell"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    CLI::App* shown = &app;
    for (CLI::App* sub : app.get_subcommands()) shown = sub;
    err << shown->help();
    return kExitInputError;
  }

  try {
    if (c_choi->parsed()) return cmd_choi(choi, out);
    if (c_apply->parsed()) return cmd_apply(apply, out);
    if (c_classify->parsed()) return cmd_classify(classify, out);
    if (c_kraus->parsed()) return cmd_kraus(kraus, out);
    if (c_detect->parsed()) return cmd_detect(detect, out);
    if (c_upb->parsed()) return cmd_upb(upb, out);
    if (c_tcheck->parsed()) return cmd_transpose_check(tcheck, out);
    if (c_tele->parsed()) return cmd_teleport(tele, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace halfdm::cli
