#include "wgm/potential.hpp"

#include <cmath>
#include <sstream>

namespace wgm {

namespace {

constexpr int kGridPoints = 200;
constexpr double kGridLow = -6.0;  // log10
constexpr double kGridHigh = 3.0;

}  // namespace

PotentialSpec::PotentialSpec(std::vector<PotentialTerm> terms, double b0)
    : terms_(std::move(terms)), b0_(b0)
{
    if (terms_.empty()) throw ValidationError("potential needs at least one term");
    if (!(b0_ > 0.0) || !std::isfinite(b0_)) throw ValidationError("potential b0 must be positive");
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const PotentialTerm& t = terms_[i];
        if (!std::isfinite(t.b) || !std::isfinite(t.p))
            throw ValidationError("potential coefficients must be finite");
        if (i == 0 && !(t.p > 2.0)) {
            std::ostringstream msg;
            msg << "potential exponent p1 = " << t.p << " must exceed 2";
            throw ValidationError(msg.str());
        }
        if (i > 0 && !(t.p > terms_[i - 1].p))
            throw ValidationError("potential exponents must be strictly increasing");
    }
    for (int sign : {-1, 1}) {
        for (int i = 0; i < kGridPoints; ++i) {
            const double e = kGridLow + (kGridHigh - kGridLow) * i / (kGridPoints - 1);
            const double s = sign * std::pow(10.0, e);
            const double F = F_eval(*this, s);
            const double floor = b0_ * std::pow(std::fabs(s), p1());
            if (F < 0.0) {
                std::ostringstream msg;
                msg << "potential is negative at s = " << s;
                throw ValidationError(msg.str());
            }
            if (F < floor * (1.0 - 1e-12)) {
                std::ostringstream msg;
                msg << "potential falls below b0 |s|^p1 at s = " << s;
                throw ValidationError(msg.str());
            }
        }
    }
}

PotentialSpec PotentialSpec::quartic()
{
    return PotentialSpec({{0.25, 4.0}}, 0.25);
}

double F_eval(const PotentialSpec& spec, double s)
{
    const double a = std::fabs(s);
    if (a == 0.0) return 0.0;
    double sum = 0.0;
    for (const PotentialTerm& t : spec.terms()) sum += t.b * std::pow(a, t.p);
    return sum;
}

double f_eval(const PotentialSpec& spec, double s)
{
    const double a = std::fabs(s);
    if (a == 0.0) return 0.0;
    double sum = 0.0;
    for (const PotentialTerm& t : spec.terms()) sum += t.b * t.p * std::pow(a, t.p - 2.0);
    return sum * s;
}

double f_prime_eval(const PotentialSpec& spec, double s)
{
    const double a = std::fabs(s);
    if (a == 0.0) return 0.0;
    double sum = 0.0;
    for (const PotentialTerm& t : spec.terms())
        sum += t.b * t.p * (t.p - 1.0) * std::pow(a, t.p - 2.0);
    return sum;
}

double growth_constant(const PotentialSpec& spec)
{
    double c = 0.0;
    for (const PotentialTerm& t : spec.terms())
        c += std::fabs(t.b) * t.p * (t.p - 1.0) + std::fabs(t.b) * t.p;
    return c;
}

bool growth_check(const PotentialSpec& spec, double s)
{
    const double c = growth_constant(spec);
    const double a = std::fabs(s);
    auto bound = [&](double shift) {
        return c * std::pow(a, spec.p1() - shift) + c * std::pow(a, spec.pk() - shift);
    };
    return std::fabs(F_eval(spec, s)) <= bound(0.0) && std::fabs(f_eval(spec, s)) <= bound(1.0) &&
           std::fabs(f_prime_eval(spec, s)) <= bound(2.0);
}

SobolevExponent sobolev_q(int d, const PotentialSpec& spec)
{
    if (d < 2) throw ValidationError("dimension must be at least 2");
    SobolevExponent out{d, std::nullopt};
    if (d >= 3 && spec.pk() > 2.0 * d / (d - 2.0)) out.q = 0.5 * d * (spec.pk() - 2.0);
    return out;
}

}  // namespace wgm
