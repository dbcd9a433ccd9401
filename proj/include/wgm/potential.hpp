#pragma once

// Polynomial-type potentials F(s) = sum_i b_i |s|^{p_i} with 2 < p_1 < ... < p_k
// and a floor F(s) >= b0 |s|^{p_1}, together with f = F' and f'.

#include <optional>
#include <stdexcept>
#include <vector>

namespace wgm {

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PotentialTerm {
    double b = 0.0;
    double p = 0.0;
};

class PotentialSpec {
public:
    /// Validates the exponents and checks F >= 0 and F >= b0 |s|^{p1} on a
    /// log-spaced grid of 200 points per sign between 1e-6 and 1e3.
    /// Throws ValidationError with a readable message on failure.
    PotentialSpec(std::vector<PotentialTerm> terms, double b0);

    const std::vector<PotentialTerm>& terms() const { return terms_; }
    double b0() const { return b0_; }
    double p1() const { return terms_.front().p; }
    double pk() const { return terms_.back().p; }

    /// F(s) = |s|^4 / 4 with b0 = 1/4.
    static PotentialSpec quartic();

private:
    std::vector<PotentialTerm> terms_;
    double b0_;
};

double F_eval(const PotentialSpec& spec, double s);
double f_eval(const PotentialSpec& spec, double s);
double f_prime_eval(const PotentialSpec& spec, double s);

/// C = C' = sum |b_i| p_i (p_i - 1) + sum |b_i| p_i.
double growth_constant(const PotentialSpec& spec);

/// True when |F|, |f| and |f'| at s sit below C|s|^{p1-j} + C'|s|^{pk-j} for j = 0, 1, 2.
bool growth_check(const PotentialSpec& spec, double s);

struct SobolevExponent {
    int d = 2;
    std::optional<double> q;  // empty: V is H^1_0 alone
};

/// q = d (p_k - 2) / 2 when d >= 3 and p_k > 2d/(d-2); none otherwise.
SobolevExponent sobolev_q(int d, const PotentialSpec& spec);

}  // namespace wgm
