#pragma once

// Text file formats. A matrix document is a JSON object
//
//   {"rows": R, "cols": C, "dims": [s, L], "data": [[re, im], ...]}
//
// with `data` row-major and `dims` optional (Choi matrices and HDMs carry
// it). Writers emit every number with 17 significant digits.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "halfdm/catalog.hpp"

namespace halfdm::io {

struct MatrixDocument {
  ComplexMatrix matrix;
  std::optional<BipartiteDims> dims;
};

std::string format_number(double x);
std::string format_matrix(const ComplexMatrix& m, std::optional<BipartiteDims> dims = {},
                          int indent = 0);
MatrixDocument parse_matrix(std::string_view text);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

MatrixDocument read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m,
                       std::optional<BipartiteDims> dims = {});

// Column vector (cols = 1) documents.
ComplexVector read_vector_file(const std::filesystem::path& path);

void write_hdm_file(const std::filesystem::path& path, const HalfDensityMatrix& t);
HalfDensityMatrix read_hdm_file(const std::filesystem::path& path);

void write_choi_file(const std::filesystem::path& path, const ChoiMatrix& c);
// Uses the file's dims when present, otherwise `fallback`; a square matrix of
// size n^2 with neither defaults to (n, n).
ChoiMatrix read_choi_file(const std::filesystem::path& path,
                          std::optional<BipartiteDims> fallback = {});

std::string format_upb(const UPB& u);
UPB parse_upb(std::string_view text);
UPB read_upb_file(const std::filesystem::path& path);
void write_upb_file(const std::filesystem::path& path, const UPB& u);

// Writes one HDM file per family member into `dir` plus `<stem>.json`, the
// manifest listing them. Returns the manifest path.
std::filesystem::path write_signed_rep(const std::filesystem::path& dir, std::string_view stem,
                                       const SignedKrausRep& rep);
SignedKrausRep read_signed_rep(const std::filesystem::path& manifest);

}  // namespace halfdm::io
