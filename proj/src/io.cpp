// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include "ednse/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ednse/error.hpp"

namespace ednse::io {

namespace {

constexpr char kMagic[6] = {'E', 'D', 'N', 'S', 'E', '1'};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

std::ofstream open_for_write(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void write_rows(std::ofstream& out, const std::vector<CsvRow>& rows, std::size_t width,
                const std::filesystem::path& path) {
  for (const auto& row : rows) {
    if (row.size() != width) throw InvalidArgument("CSV row width does not match header for " + path.string());
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

template <class T>
void put_le(std::ostream& out, T value) {
  static_assert(sizeof(T) == 8);
  auto bits = std::bit_cast<std::uint64_t>(value);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

template <class T>
T get_le(std::istream& in, const std::filesystem::path& path) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw IoError("truncated checkpoint " + path.string());
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<T>(bits);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::string>& csv_header(CsvSchema schema) {
  static const std::vector<std::string> ledger{"t", "l2_sq", "grad_integral", "damp_integral", "budget", "slack"};
  static const std::vector<std::string> gronwall{"t", "w_norm_sq", "bound_lambda0t", "bound_2lambda0t", "margin"};
  static const std::vector<std::string> split{"delta", "t", "v_norm", "w_norm", "f1", "f2", "f3", "f4", "recon_error"};
  static const std::vector<std::string> decay{"epsilon", "t_cross"};
  switch (schema) {
    case CsvSchema::ledger: return ledger;
    case CsvSchema::gronwall: return gronwall;
    case CsvSchema::split: return split;
    case CsvSchema::decay: return decay;
  }
  return ledger;
}

void write_csv(const std::vector<CsvRow>& rows, CsvSchema schema, const std::filesystem::path& path) {
  write_table(csv_header(schema), rows, path);
}

void write_table(const std::vector<std::string>& header, const std::vector<CsvRow>& rows,
                 const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << join(header) << '\n';
  write_rows(out, rows, header.size(), path);
}

std::vector<CsvRow> read_csv(const std::filesystem::path& path, CsvSchema schema) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != join(csv_header(schema))) {
    throw IoError("unexpected CSV header in " + path.string());
  }
  const std::size_t width = csv_header(schema).size();
  std::vector<CsvRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    CsvRow row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw IoError(path.string() + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
      row.push_back(v);
    }
    if (row.size() != width) throw IoError(path.string() + ":" + std::to_string(lineno) + ": wrong column count");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CsvRow> ledger_rows(const EnergyLedger& ledger) {
  std::vector<CsvRow> rows;
  for (const auto& r : ledger) rows.push_back({r.t, r.l2_sq, r.grad_integral, r.damp_integral, r.budget, r.slack});
  return rows;
}

std::vector<CsvRow> gronwall_rows(const GronwallReport& report) {
  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    const double w = report.w_norm_sq[i];
    const double b = report.bound[i];
    const double margin = b > 0.0 ? w / b : (w == 0.0 ? 0.0 : INFINITY);
    rows.push_back({report.times[i], w, b, report.bound_doubled[i], margin});
  }
  return rows;
}

std::vector<CsvRow> split_rows(const std::vector<DecompositionReport>& reports) {
  std::vector<CsvRow> rows;
  for (const auto& r : reports) {
    rows.push_back({r.delta, r.t, r.v_norm, r.w_norm, r.f_norms[0], r.f_norms[1], r.f_norms[2], r.f_norms[3],
                    r.recon_error});
  }
  return rows;
}

std::vector<CsvRow> decay_rows(const std::vector<DecayCrossing>& crossings) {
  std::vector<CsvRow> rows;
  for (const auto& c : crossings) rows.push_back({c.epsilon, c.t_cross});
  return rows;
}

void write_checkpoint(const std::filesystem::path& path, const SimState& state) {
  const GridSpec& grid = state.u.grid();
  std::ofstream out = open_for_write(path, std::ios::out | std::ios::binary);
  out.write(kMagic, sizeof kMagic);
  put_le(out, static_cast<std::uint64_t>(grid.n));
  put_le(out, grid.box_length);
  put_le(out, state.t);
  put_le(out, static_cast<std::uint64_t>(state.step));
  for (int j = 0; j < 3; ++j)
    for (const auto& c : state.u.component(j)) {
      put_le(out, c.real());
      put_le(out, c.imag());
    }
  if (!out) throw IoError("write failed for " + path.string());
}

SimState read_checkpoint(const std::filesystem::path& path, double dealias_fraction) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[sizeof kMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
    throw IoError("bad checkpoint magic in " + path.string());
  }
  const auto n = get_le<std::uint64_t>(in, path);
  if (n == 0 || n % 2 != 0 || n > 4096) throw IoError("bad checkpoint resolution in " + path.string());
  GridSpec grid;
  grid.n = static_cast<int>(n);
  grid.box_length = get_le<double>(in, path);
  grid.dealias_fraction = dealias_fraction;
  grid.validate();
  SimState state;
  state.t = get_le<double>(in, path);
  state.step = static_cast<long>(get_le<std::uint64_t>(in, path));
  state.u = SpectralVectorField(grid);
  for (int j = 0; j < 3; ++j)
    for (auto& c : state.u.component(j)) {
      const double re = get_le<double>(in, path);
      const double im = get_le<double>(in, path);
      c = Complex(re, im);
    }
  if (in.peek() != std::char_traits<char>::eof()) throw IoError("trailing bytes in checkpoint " + path.string());
  return state;
}

}  // namespace ednse::io
