#include "halfdm/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace halfdm::io {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Index positive_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 1) {
    throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be a positive integer");
  }
  return static_cast<Index>(j.at(key).get<long long>());
}

double finite_number(const json& j) {
  if (!j.is_number()) throw Error(ErrorCode::ParseError, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorCode::ParseError, "non-finite number");
  return x;
}

BipartiteDims parse_dims(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer() ||
      j[0].get<long long>() < 1 || j[1].get<long long>() < 1) {
    throw Error(ErrorCode::ParseError, "'dims' must be [s, L] with positive integers");
  }
  return BipartiteDims(static_cast<Index>(j[0].get<long long>()),
                       static_cast<Index>(j[1].get<long long>()));
}

MatrixDocument matrix_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "matrix document must be an object");
  const Index rows = positive_int(j, "rows");
  const Index cols = positive_int(j, "cols");
  if (!j.contains("data") || !j.at("data").is_array()) {
    throw Error(ErrorCode::ParseError, "field 'data' must be a list");
  }
  const json& data = j.at("data");
  if (static_cast<Index>(data.size()) != rows * cols) {
    throw Error(ErrorCode::ParseError, "'data' length does not equal rows*cols");
  }
  MatrixDocument doc;
  doc.matrix.resize(rows, cols);
  for (Index k = 0; k < rows * cols; ++k) {
    const json& entry = data[static_cast<std::size_t>(k)];
    if (!entry.is_array() || entry.size() != 2) {
      throw Error(ErrorCode::ParseError, "each 'data' entry must be [real, imaginary]");
    }
    doc.matrix(k / cols, k % cols) = Complex(finite_number(entry[0]), finite_number(entry[1]));
  }
  if (j.contains("dims")) doc.dims = parse_dims(j.at("dims"));
  return doc;
}

std::string dims_text(BipartiteDims d) {
  return "[" + std::to_string(d.s) + ", " + std::to_string(d.L) + "]";
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string format_matrix(const ComplexMatrix& m, std::optional<BipartiteDims> dims, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  std::ostringstream os;
  os << "{\n"
     << pad << "  \"rows\": " << m.rows() << ",\n"
     << pad << "  \"cols\": " << m.cols() << ",\n";
  if (dims) os << pad << "  \"dims\": " << dims_text(*dims) << ",\n";
  os << pad << "  \"data\": [";
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      os << ((i == 0 && j == 0) ? "\n" : ",\n") << pad << "    [" << format_number(m(i, j).real())
         << ", " << format_number(m(i, j).imag()) << "]";
    }
  os << "\n" << pad << "  ]\n" << pad << "}";
  return os.str();
}

MatrixDocument parse_matrix(std::string_view text) { return matrix_from_json(parse_json(text)); }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

MatrixDocument read_matrix_file(const std::filesystem::path& path) {
  return parse_matrix(read_text(path));
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m,
                       std::optional<BipartiteDims> dims) {
  write_text(path, format_matrix(m, dims));
}

ComplexVector read_vector_file(const std::filesystem::path& path) {
  const MatrixDocument doc = read_matrix_file(path);
  if (doc.matrix.cols() != 1) throw Error(ErrorCode::ParseError, "vector file must have cols = 1");
  return doc.matrix.col(0);
}

void write_hdm_file(const std::filesystem::path& path, const HalfDensityMatrix& t) {
  write_matrix_file(path, t.matrix(), t.dims());
}

HalfDensityMatrix read_hdm_file(const std::filesystem::path& path) {
  const MatrixDocument doc = read_matrix_file(path);
  if (doc.dims && (doc.dims->s != doc.matrix.rows() || doc.dims->L != doc.matrix.cols())) {
    throw Error(ErrorCode::ParseError, "HDM dims do not match the matrix shape");
  }
  return HalfDensityMatrix(doc.matrix);
}

void write_choi_file(const std::filesystem::path& path, const ChoiMatrix& c) {
  write_matrix_file(path, c.matrix(), c.dims());
}

ChoiMatrix read_choi_file(const std::filesystem::path& path, std::optional<BipartiteDims> fallback) {
  const MatrixDocument doc = read_matrix_file(path);
  std::optional<BipartiteDims> dims = doc.dims ? doc.dims : fallback;
  if (!dims) {
    const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(doc.matrix.rows()))));
    if (n * n != doc.matrix.rows()) {
      throw Error(ErrorCode::ParseError, "Choi file needs dims unless its size is a square");
    }
    dims = BipartiteDims(n, n);
  }
  return ChoiMatrix(doc.matrix, *dims);
}

std::string format_upb(const UPB& u) {
  std::ostringstream os;
  os << "{\n  \"dims\": " << dims_text(u.dims()) << ",\n  \"members\": [";
  for (Index i = 0; i < u.size(); ++i) {
    const auto& p = u.members()[static_cast<std::size_t>(i)];
    os << (i == 0 ? "\n" : ",\n") << "    {\n      \"alpha\": " << format_matrix(p.alpha, {}, 6)
       << ",\n      \"beta\": " << format_matrix(p.beta, {}, 6) << "\n    }";
  }
  os << "\n  ]\n}";
  return os.str();
}

UPB parse_upb(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("dims") || !j.contains("members") ||
      !j.at("members").is_array()) {
    throw Error(ErrorCode::ParseError, "UPB document needs 'dims' and 'members'");
  }
  const BipartiteDims dims = parse_dims(j.at("dims"));
  std::vector<ProductPair> members;
  for (const json& m : j.at("members")) {
    if (!m.is_object() || !m.contains("alpha") || !m.contains("beta")) {
      throw Error(ErrorCode::ParseError, "UPB member needs 'alpha' and 'beta'");
    }
    const MatrixDocument a = matrix_from_json(m.at("alpha"));
    const MatrixDocument b = matrix_from_json(m.at("beta"));
    if (a.matrix.cols() != 1 || b.matrix.cols() != 1) {
      throw Error(ErrorCode::ParseError, "UPB member vectors must have cols = 1");
    }
    members.push_back(ProductPair{a.matrix.col(0), b.matrix.col(0)});
  }
  return UPB(dims, std::move(members));
}

UPB read_upb_file(const std::filesystem::path& path) { return parse_upb(read_text(path)); }

void write_upb_file(const std::filesystem::path& path, const UPB& u) {
  write_text(path, format_upb(u));
}

std::filesystem::path write_signed_rep(const std::filesystem::path& dir, std::string_view stem,
                                       const SignedKrausRep& rep) {
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["dims"] = {rep.dims.s, rep.dims.L};
  manifest["positive"] = json::array();
  manifest["negative"] = json::array();
  auto emit = [&](const std::vector<HalfDensityMatrix>& family, const char* key) {
    for (std::size_t i = 0; i < family.size(); ++i) {
      const std::string name = std::string(stem) + "_" + key + "_" + std::to_string(i) + ".json";
      write_hdm_file(dir / name, family[i]);
      manifest[key].push_back(name);
    }
  };
  emit(rep.positive, "positive");
  emit(rep.negative, "negative");
  const std::filesystem::path path = dir / (std::string(stem) + ".json");
  write_text(path, manifest.dump(2));
  return path;
}

SignedKrausRep read_signed_rep(const std::filesystem::path& manifest) {
  const json j = parse_json(read_text(manifest));
  if (!j.is_object() || !j.contains("dims") || !j.contains("positive") || !j.contains("negative")) {
    throw Error(ErrorCode::ParseError, "manifest needs 'dims', 'positive' and 'negative'");
  }
  SignedKrausRep rep{parse_dims(j.at("dims")), {}, {}};
  const std::filesystem::path base = manifest.parent_path();
  auto load = [&](const json& list, std::vector<HalfDensityMatrix>& family) {
    if (!list.is_array()) throw Error(ErrorCode::ParseError, "manifest family must be a list");
    for (const json& name : list) {
      if (!name.is_string()) throw Error(ErrorCode::ParseError, "manifest entries are file names");
      HalfDensityMatrix t = read_hdm_file(base / name.get<std::string>());
      if (t.dims() != rep.dims) throw Error(ErrorCode::ParseError, "HDM shape differs from manifest");
      family.push_back(std::move(t));
    }
  };
  load(j.at("positive"), rep.positive);
  load(j.at("negative"), rep.negative);
  return rep;
}

}  // namespace halfdm::io
