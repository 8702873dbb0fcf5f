#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bzwave/domain.hpp"

namespace bzwave::cli {

/// 17 significant digits, '.' decimal separator, locale independent.
std::string num(double v);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

/// t,phi,psi,res_phi,res_psi rows.
void write_front_csv(std::ostream& os, const Profile& p, const std::vector<double>& res_phi,
                     const std::vector<double>& res_psi);

/// Reads a front CSV (header t,phi,psi[,res_phi,res_psi]). The t column must
/// be uniform. Throws UsageError with the line number on malformed input.
Profile read_front_csv(std::istream& is);

}  // namespace bzwave::cli
