#include "checks.hpp"

#include <cmath>
#include <functional>

#include "bzwave/error.hpp"
#include "csv_io.hpp"

namespace bzwave::cli {

namespace {

using json = nlohmann::json;

json relation_json(const Relation& r) {
    return {{"applies", r.applies}, {"pass", r.pass}, {"margin", r.margin}};
}

json fit_json(const TailFit& f) {
    return {{"side", f.side == Side::minus_inf ? "-inf" : "+inf"},
            {"window", {f.t_a, f.t_b}},
            {"nodes", f.nodes},
            {"estimate", f.estimate},
            {"target", f.target},
            {"rel_err", f.rel_err},
            {"fallback_window", f.fallback_window}};
}

void add_relation(std::vector<Check>& out, const char* name, const Relation& r) {
    if (!r.applies) return;
    out.push_back({name, r.pass, "margin " + num(r.margin)});
}

void add_fit(std::vector<Check>& out, json* fits, const std::string& name, double tol,
             const std::function<TailFit()>& fit) {
    try {
        const TailFit f = fit();
        if (fits) {
            json j = fit_json(f);
            j["name"] = name;
            j["tolerance"] = tol;
            fits->push_back(j);
        }
        out.push_back({name, f.rel_err <= tol,
                       "estimate " + num(f.estimate) + " target " + num(f.target) + " rel_err " +
                           num(f.rel_err)});
    } catch (const Error& e) {
        if (fits) fits->push_back({{"name", name}, {"error", e.what()}});
        out.push_back({name, false, e.what()});
    }
}

}  // namespace

std::vector<Check> front_checks(const Front& f, const BzParams& p, json* report) {
    std::vector<Check> out;
    const RelationReport rr = check_relations(f, p);
    add_relation(out, "lower bound L*phi(t-ch) < psi", rr.lower_A);
    add_relation(out, "upper bound psi < K*phi", rr.upper_A);
    add_relation(out, "degenerate reduction phi = psi", rr.degenerate);
    add_relation(out, "ordering psi > phi", rr.part_B);
    add_relation(out, "square bound psi^2 < M*phi", rr.part_C);
    add_relation(out, "monotone phi and psi", rr.monotone);

    json fits = json::array();
    if (p.r() < 1.0 && f.c > 2.0 * std::sqrt(1.0 - p.r()) && !at_critical_speed(f.c, p.r())) {
        const double lambda = char_roots(f.c, p.r()).lambda;
        add_fit(out, &fits, "tail -inf phi ~ exp(lambda t)", 0.05,
                [&] { return fit_tail_exponent(f, Side::minus_inf, lambda); });
    } else if (p.critical()) {
        add_fit(out, &fits, "tail -inf phi ~ 2c^2/(b t^2)", 0.10,
                [&] { return fit_algebraic_tail(f, p.b()); });
    }
    const double zeta1 = plus_infinity_roots(f.c, p.b()).zeta1;
    add_fit(out, &fits, "tail +inf 1-psi ~ exp(zeta1 t)", 0.05,
            [&] { return fit_tail_exponent(f, Side::plus_inf, zeta1); });

    if (report) {
        (*report)["relations"] = {{"K", rr.K},
                                  {"L", rr.L},
                                  {"M", rr.M},
                                  {"lower_bound", relation_json(rr.lower_A)},
                                  {"upper_bound", relation_json(rr.upper_A)},
                                  {"degenerate", relation_json(rr.degenerate)},
                                  {"degenerate_sup", rr.degenerate_sup},
                                  {"ordering", relation_json(rr.part_B)},
                                  {"square_bound", relation_json(rr.part_C)},
                                  {"monotone", relation_json(rr.monotone)},
                                  {"margin", rr.margin},
                                  {"all_pass", rr.all_pass()}};
        (*report)["tail_fits"] = fits;
    }
    return out;
}

}  // namespace bzwave::cli
