#include "qsdc/period_design.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qsdc {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void check_p0(double p0) { require(p0 > 0.0 && p0 < 1.0, "design: p0 must lie in (0, 1)"); }
void check_cbar(double cbar) { require(cbar > 0.0 && cbar <= 1.0, "design: cbar must lie in (0, 1]"); }
void check_eps(double eps) { require(eps > 0.0, "design: eps must be > 0"); }
void check_gammas(double gamma0, double gamma) {
    require(gamma >= 0.0 && gamma0 >= gamma, "design: need gamma0 >= gamma >= 0");
}

}  // namespace

const char* to_string(FormulaId id) {
    switch (id) {
        case FormulaId::Tc: return "Tc";
        case FormulaId::Ta: return "Ta";
        case FormulaId::TaPrime: return "Ta_prime";
        case FormulaId::TaDoublePrime: return "Ta_doubleprime";
        case FormulaId::Tp: return "Tp";
        case FormulaId::TpPrime: return "Tp_prime";
        case FormulaId::TpDoublePrime: return "Tp_doubleprime";
        case FormulaId::Td: return "Td";
    }
    return "?";
}

FormulaId formula_from_string(std::string_view name) {
    for (FormulaId id : {FormulaId::Tc, FormulaId::Ta, FormulaId::TaPrime,
                         FormulaId::TaDoublePrime, FormulaId::Tp, FormulaId::TpPrime,
                         FormulaId::TpDoublePrime, FormulaId::Td})
        if (name == to_string(id)) return id;
    throw std::invalid_argument("unknown design formula '" + std::string(name) + "'");
}

double design_Tc(double p0, double eps) {
    check_p0(p0);
    check_eps(eps);
    return std::acos(1.0 - 2.0 * p0) / eps;
}

double design_Ta(double p0, double eps, double gamma0, double gamma) {
    check_p0(p0);
    check_eps(eps);
    check_gammas(gamma0, gamma);
    const double g = gamma0 + gamma;
    return 2.0 * p0 / (std::sqrt(4.0 * eps * eps + g * g) + g);
}

double ta_prime_limit(double eps, double gamma0, double gamma) {
    check_eps(eps);
    check_gammas(gamma0, gamma);
    const double g = gamma0 + gamma;
    return 0.5 - g / (2.0 * std::sqrt(4.0 * eps * eps + g * g));
}

double design_Ta_prime(double p0, double eps, double gamma0, double gamma) {
    check_p0(p0);
    const double f = ta_prime_limit(eps, gamma0, gamma);
    if (!(p0 <= f)) {
        std::ostringstream msg;
        msg << "design_Ta_prime: requires p0 <= f(eps, gamma0, gamma) = " << f << ", got p0 = "
            << p0;
        throw std::invalid_argument(msg.str());
    }
    const double g = gamma0 + gamma;
    return 2.0 * p0 / (4.0 * eps * std::sqrt(p0 - p0 * p0) + 2.0 * g * (1.0 - p0));
}

double design_Ta_doubleprime(double p0, double gamma0, double gamma) {
    check_p0(p0);
    check_gammas(gamma0, gamma);
    require(gamma0 + gamma > 0.0, "design_Ta_doubleprime: requires gamma0 + gamma > 0");
    return -std::log1p(-p0) / (gamma0 + gamma);
}

bool tp_low_rate_branch(double eps, double gamma0, double gamma) {
    check_eps(eps);
    check_gammas(gamma0, gamma);
    const double g = gamma0 + gamma;
    return 4.0 * g * g >= eps * eps;
}

double design_Tp(double cbar, double eps, double gamma0, double gamma) {
    check_cbar(cbar);
    const double g = gamma0 + gamma;
    if (tp_low_rate_branch(eps, gamma0, gamma))
        return (1.0 - cbar) / (4.0 * std::sqrt(2.0) * g);
    return (1.0 - cbar) * std::sqrt(eps * eps - 2.0 * g * g) / (2.0 * eps * eps);
}

double design_Tp_prime(double cbar, double gamma0, double gamma) {
    check_cbar(cbar);
    check_gammas(gamma0, gamma);
    require(gamma0 + gamma > 0.0, "design_Tp_prime: requires gamma0 + gamma > 0");
    return (1.0 - std::sqrt(cbar)) / (2.0 * std::sqrt(2.0) * (gamma0 + gamma));
}

double design_Tp_doubleprime(double cbar, double gamma0, double gamma) {
    check_cbar(cbar);
    check_gammas(gamma0, gamma);
    require(gamma0 + gamma > 0.0, "design_Tp_doubleprime: requires gamma0 + gamma > 0");
    return -std::log(cbar) / (4.0 * (gamma0 + gamma));
}

double design_Td(double pbar, double gamma0, double gamma) {
    require(pbar >= 0.5 + 1e-12 && pbar <= 1.0, "design_Td: pbar must lie in (0.5, 1]");
    check_gammas(gamma0, gamma);
    require(gamma0 + gamma > 0.0, "design_Td: requires gamma0 + gamma > 0");
    return -std::log(2.0 * pbar - 1.0) / (8.0 * (gamma0 + gamma));
}

double alpha_bound_closed(double p0, double beta) {
    check_p0(p0);
    require(beta >= 0.0 && beta < 1.0, "alpha_bound_closed: beta must lie in [0, 1)");
    return (1.0 - std::cos(beta * std::acos(1.0 - 2.0 * p0))) / (2.0 * p0);
}

double alpha_bound_amplitude(double beta) {
    require(beta > 0.0 && beta <= 1.0, "alpha_bound_amplitude: beta must lie in (0, 1]");
    return beta;
}

double best_Ta(double p0, double eps, double gamma0, double gamma, bool h_delta_zero) {
    double best = design_Ta(p0, eps, gamma0, gamma);
    if (p0 <= ta_prime_limit(eps, gamma0, gamma))
        best = std::max(best, design_Ta_prime(p0, eps, gamma0, gamma));
    if (h_delta_zero && gamma0 + gamma > 0.0)
        best = std::max(best, design_Ta_doubleprime(p0, gamma0, gamma));
    return best;
}

double design_period(FormulaId id, const DesignParams& p) {
    switch (id) {
        case FormulaId::Tc: return design_Tc(p.p0, p.eps);
        case FormulaId::Ta: return design_Ta(p.p0, p.eps, p.gamma0, p.gamma);
        case FormulaId::TaPrime: return design_Ta_prime(p.p0, p.eps, p.gamma0, p.gamma);
        case FormulaId::TaDoublePrime: return design_Ta_doubleprime(p.p0, p.gamma0, p.gamma);
        case FormulaId::Tp: return design_Tp(p.cbar, p.eps, p.gamma0, p.gamma);
        case FormulaId::TpPrime: return design_Tp_prime(p.cbar, p.gamma0, p.gamma);
        case FormulaId::TpDoublePrime: return design_Tp_doubleprime(p.cbar, p.gamma0, p.gamma);
        case FormulaId::Td: return design_Td(p.pbar, p.gamma0, p.gamma);
    }
    throw std::invalid_argument("design_period: unknown formula");
}

double to_physical(FormulaId id, const DesignParams& physical) {
    // The formulas are homogeneous of degree -1 in the rates, so evaluating
    // them at angular rates in rad/s yields the period in seconds.
    return design_period(id, physical);
}

SamplingPlan make_plan(double period, double beta, double alpha, double eta,
                       SlidingModeTarget target, FormulaId formula_id) {
    require(period > 0.0, "SamplingPlan: period must be > 0");
    require(beta >= 0.0 && beta < 1.0, "SamplingPlan: beta must lie in [0, 1)");
    require(alpha >= 0.0 && alpha <= 1.0, "SamplingPlan: alpha must lie in [0, 1]");
    require(eta > 0.0 && eta < 1.0, "SamplingPlan: eta must lie in (0, 1)");

    const SlidingModeTarget::Kind expected = [&] {
        switch (formula_id) {
            case FormulaId::Tc:
            case FormulaId::Ta:
            case FormulaId::TaPrime:
            case FormulaId::TaDoublePrime: return SlidingModeTarget::Kind::FailureProb;
            case FormulaId::Tp:
            case FormulaId::TpPrime:
            case FormulaId::TpDoublePrime: return SlidingModeTarget::Kind::Coherence;
            case FormulaId::Td: return SlidingModeTarget::Kind::Purity;
        }
        return SlidingModeTarget::Kind::FailureProb;
    }();
    if (target.kind != expected) {
        std::ostringstream msg;
        msg << "SamplingPlan: formula " << to_string(formula_id) << " requires a "
            << to_string(expected) << " target, got " << to_string(target.kind);
        throw std::invalid_argument(msg.str());
    }

    if (formula_id == FormulaId::Tc) {
        const double bound = alpha_bound_closed(target.value, beta);
        if (alpha > bound) {
            std::ostringstream msg;
            msg << "SamplingPlan: closed-system subset condition violated: alpha = " << alpha
                << " exceeds (1 - cos(beta * arccos(1 - 2 p0))) / (2 p0) = " << bound;
            throw std::invalid_argument(msg.str());
        }
    } else if (target.kind == SlidingModeTarget::Kind::FailureProb) {
        if (alpha > beta) {
            std::ostringstream msg;
            msg << "SamplingPlan: amplitude-damping subset condition violated: alpha = " << alpha
                << " exceeds beta = " << beta;
            throw std::invalid_argument(msg.str());
        }
    }
    return SamplingPlan{period, beta, alpha, eta, target, formula_id};
}

}  // namespace qsdc
