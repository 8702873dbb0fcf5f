#include "csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "config.hpp"

namespace bzwave::cli {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

void write_front_csv(std::ostream& os, const Profile& p, const std::vector<double>& res_phi,
                     const std::vector<double>& res_psi) {
    os << "t,phi,psi,res_phi,res_psi\n";
    const auto& g = p.grid();
    for (std::size_t i = 0; i < g.n(); ++i) {
        os << num(g.node(i)) << ',' << num(p.phi()[i]) << ',' << num(p.psi()[i]) << ','
           << num(res_phi[i]) << ',' << num(res_psi[i]) << '\n';
    }
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& s, std::size_t line) {
    // strtod honours the C locale, which the CLI never changes.
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw UsageError("front CSV line " + std::to_string(line) + ": '" + s + "' is not a finite number");
    }
    return v;
}

}  // namespace

Profile read_front_csv(std::istream& is) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(is, line)) throw UsageError("front CSV line 1: empty file");
    const auto head = split(line);
    if (head.size() < 3 || head[0] != "t" || head[1] != "phi" || head[2] != "psi") {
        throw UsageError("front CSV line 1: header must start with t,phi,psi");
    }
    std::vector<double> t, phi, psi;
    std::vector<std::size_t> where;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto f = split(line);
        if (f.size() != head.size()) {
            throw UsageError("front CSV line " + std::to_string(lineno) + ": expected " +
                             std::to_string(head.size()) + " fields, got " + std::to_string(f.size()));
        }
        t.push_back(parse_number(f[0], lineno));
        phi.push_back(parse_number(f[1], lineno));
        psi.push_back(parse_number(f[2], lineno));
        where.push_back(lineno);
    }
    if (t.size() < 3) throw UsageError("front CSV: need at least 3 data rows");
    const double D = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    if (!(D > 0.0)) throw UsageError("front CSV: t must increase");
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double expect = t.front() + D * static_cast<double>(i);
        if (std::abs(t[i] - expect) > 1e-6 * D) {
            throw UsageError("front CSV line " + std::to_string(where[i]) + ": t is not on a uniform grid");
        }
    }
    return Profile(Grid(t.front(), t.back(), t.size()), std::move(phi), std::move(psi));
}

}  // namespace bzwave::cli
