// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDNSE_IO_HPP
#define EDNSE_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "ednse/diagnostics.hpp"
#include "ednse/solver.hpp"

namespace ednse::io {

/// Fixed CSV layouts. Headers:
///   ledger   t,l2_sq,grad_integral,damp_integral,budget,slack
///   gronwall t,w_norm_sq,bound_lambda0t,bound_2lambda0t,margin
///   split    delta,t,v_norm,w_norm,f1,f2,f3,f4,recon_error
///   decay    epsilon,t_cross
enum class CsvSchema { ledger, gronwall, split, decay };

using CsvRow = std::vector<double>;

const std::vector<std::string>& csv_header(CsvSchema schema);

/// Values are written with 17 significant digits, so reading back is exact.
void write_csv(const std::vector<CsvRow>& rows, CsvSchema schema, const std::filesystem::path& path);
std::vector<CsvRow> read_csv(const std::filesystem::path& path, CsvSchema schema);

/// Free-form numeric table with the same number formatting.
void write_table(const std::vector<std::string>& header, const std::vector<CsvRow>& rows,
                 const std::filesystem::path& path);

std::vector<CsvRow> ledger_rows(const EnergyLedger& ledger);
std::vector<CsvRow> gronwall_rows(const GronwallReport& report);
std::vector<CsvRow> split_rows(const std::vector<DecompositionReport>& reports);
std::vector<CsvRow> decay_rows(const std::vector<DecayCrossing>& crossings);

/// 17-significant-digit text form used by every writer.
std::string format_double(double v);

/// Binary checkpoint (see docs/formats.md):
///   "EDNSE1" | u64 n | f64 box_length | f64 time | u64 step |
///   3 x n^3 x (f64 re, f64 im)
/// all little-endian; components in order, lattice indices row-major.
void write_checkpoint(const std::filesystem::path& path, const SimState& state);
SimState read_checkpoint(const std::filesystem::path& path, double dealias_fraction = 2.0 / 3.0);

}  // namespace ednse::io

#endif  // EDNSE_IO_HPP
