#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>

namespace heckegrid {

/// Integer 2x2 matrix (a b; c d) with positive determinant.
struct IntegerMatrix2x2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    std::int64_t det() const;

    friend bool operator==(const IntegerMatrix2x2&, const IntegerMatrix2x2&) = default;
};

/// Throws DomainError when an entry overflows 64 bits.
IntegerMatrix2x2 operator*(const IntegerMatrix2x2& x, const IntegerMatrix2x2& y);

/// Inverse of a determinant-one matrix.
IntegerMatrix2x2 inverse(const IntegerMatrix2x2& m);

inline constexpr IntegerMatrix2x2 kT{1, 1, 0, 1};
inline constexpr IntegerMatrix2x2 kS{0, -1, 1, 0};

/// W_N = (0 -1; N 0).
constexpr IntegerMatrix2x2 fricke(std::int64_t level) { return {0, -1, level, 0}; }

/// Member of Gamma_0(M, N): determinant one, M | c, N | b.
bool in_gamma0(const IntegerMatrix2x2& m, std::int64_t lower, std::int64_t upper = 1);

/// exp(2 pi i e / m).
class RootOfUnity {
public:
    RootOfUnity() = default;
    RootOfUnity(std::int64_t order, std::int64_t exponent);

    std::int64_t order() const { return order_; }
    std::int64_t exponent() const { return exponent_; }

    /// Same value with the smallest possible order.
    RootOfUnity reduced() const;

    std::complex<double> value() const;

    friend RootOfUnity operator*(const RootOfUnity& x, const RootOfUnity& y);
    RootOfUnity pow(std::int64_t k) const;
    RootOfUnity conj() const { return pow(-1); }
    bool is_one() const { return exponent_ == 0; }

    /// Compares values, not representations.
    friend bool operator==(const RootOfUnity& x, const RootOfUnity& y);

private:
    std::int64_t order_ = 1;
    std::int64_t exponent_ = 0;
};

std::string to_string(const RootOfUnity& z);

/// Sign conventions for the two extended Jacobi symbols. Each bit multiplies the
/// symbol by (-1)^{[(sgn x - 1)/2][(sgn y - 1)/2]} (sgn 0 = 1). The default is the
/// one selected by the numeric eta oracle (see calibrate_eta_convention).
struct JacobiConvention {
    bool top_sign = false;
    bool bottom_sign = true;

    friend bool operator==(const JacobiConvention&, const JacobiConvention&) = default;
};

/// Ordinary Jacobi symbol (a / n) for odd n > 0.
int jacobi(std::int64_t a, std::int64_t n);

/// (d / c)^*, c odd, gcd(c, d) = 1.
int jacobi_extended_top(std::int64_t d, std::int64_t c, JacobiConvention conv = {});

/// (c / d)_*, d odd, gcd(c, d) = 1.
int jacobi_extended_bottom(std::int64_t c, std::int64_t d, JacobiConvention conv = {});

enum class MultiplierFamily { EtaFull, EtaFourPower, Level2, Level3, Level4 };

struct MultiplierId {
    MultiplierFamily family = MultiplierFamily::EtaFull;
    int sign = 1;      ///< eigenvalue on the Fricke involution (levels 2-4)
    int power = 1;     ///< EtaFourPower evaluates nu^{power} (the r/4 of a level-one grid)

    friend bool operator==(const MultiplierId&, const MultiplierId&) = default;
};

std::string to_string(const MultiplierId& id);

/// Level N of the group the multiplier lives on (1 for the eta systems).
std::int64_t level_of(const MultiplierId& id);

/// Largest possible order of a value of the multiplier.
std::int64_t order_bound(const MultiplierId& id);

/// Value of the multiplier on g.
///
/// The eta systems accept determinant-one matrices. The level-N systems accept any
/// positive integer multiple of an element of Gamma_0(N) or of the Fricke coset
/// Gamma_0(N) W_N; scalar factors act trivially in weight 2.
RootOfUnity evaluate(const MultiplierId& id, const IntegerMatrix2x2& g, JacobiConvention conv = {});

struct EtaOracleResult {
    bool pass = false;
    std::complex<double> measured;  ///< eta(g z) / ((c z + d)^{1/2} eta(z))
    std::complex<double> expected;  ///< evaluate(EtaFull, g)
    double error = 0;               ///< |measured - expected|
    double modulus_defect = 0;      ///< ||measured| - 1|
};

/// eta(z) from its q-product in floating point.
std::complex<double> eta_numeric(std::complex<double> z);

/// Checks the eta transformation law at z0 with the principal square root
/// (argument in (-pi, pi]).
EtaOracleResult numeric_eta_oracle(const IntegerMatrix2x2& g, std::complex<double> z0, double tol,
                                   JacobiConvention conv = {});

/// Sample point where both z0 and g z0 have imaginary part 1/|c| (or 1 when c = 0).
std::complex<double> balanced_point(const IntegerMatrix2x2& g);

/// Random elements of Gamma_0(M, N), built as words in a generating set drawn from
/// the group and checked for membership.
class Gamma0Sampler {
public:
    Gamma0Sampler(std::int64_t lower, std::int64_t upper, std::uint64_t seed, std::int64_t entry_bound = 10'000);
    IntegerMatrix2x2 operator()();

private:
    IntegerMatrix2x2 random_element();

    std::int64_t lower_, upper_, bound_;
    std::mt19937_64 rng_;
};

/// Random element of SL_2(Z) with every |entry| <= bound.
IntegerMatrix2x2 random_sl2z(std::mt19937_64& rng, std::int64_t bound);

/// Tries the four sign conventions against the numeric oracle on `samples` random
/// matrices (plus S, T and -I). Returns the number of conventions that pass everywhere
/// and writes the passing one to `chosen` when exactly one does.
int calibrate_eta_convention(int samples, std::uint64_t seed, double tol, JacobiConvention& chosen);

} // namespace heckegrid
