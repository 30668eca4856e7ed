#include "curlab/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "curlab/errors.hpp"

namespace curlab {

namespace {

bool valid_integer_token(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Int int_from_token(std::string_view s) {
    return Int(std::string(s), 10);
}

// mpz_pow_ui wants an unsigned long; anything bigger than this is a sign of a
// misconfigured exponent, not a real workload.
constexpr unsigned long kMaxExponent = 1u << 20;

unsigned long exponent_to_ulong(const Int& e) {
    if (e < 0 || !e.fits_ulong_p() || e.get_ui() > kMaxExponent)
        throw ParameterError("exponent too large for exact evaluation: " + e.get_str());
    return e.get_ui();
}

Int int_pow(const Int& base, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

}  // namespace

Rat rat(long numerator, long denominator) {
    if (denominator == 0) throw ParameterError("zero denominator");
    Rat value(numerator, denominator);
    value.canonicalize();
    return value;
}

Rat rat_from_string(std::string_view text) {
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer_token(num) || !valid_integer_token(den))
        throw ParseError("malformed rational: '" + std::string(text) + "'");
    Int d = int_from_token(den);
    if (d == 0) throw ParseError("zero denominator in rational: '" + std::string(text) + "'");
    Rat value(int_from_token(num));
    value /= Rat(d);
    return value;
}

std::string rat_to_string(const Rat& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string rat_to_decimal(const Rat& value, int digits) {
    if (digits < 0) throw ParameterError("negative digit count");
    const bool negative = sgn(value) < 0;
    Int scale = int_pow(Int(10), static_cast<unsigned long>(digits));
    Int num = abs(value.get_num()) * scale;
    const Int& den = value.get_den();
    Int scaled = (2 * num + den) / (2 * den);  // round half away from zero
    Int whole = scaled / scale;
    Int frac = scaled % scale;
    std::string out = whole.get_str();
    if (digits > 0) {
        std::string f = frac.get_str();
        out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
    }
    if (negative && scaled != 0) out.insert(out.begin(), '-');
    return out;
}

Rat rat_pow(const Rat& base, const Rat& exponent) {
    if (sgn(base) < 0) throw ParameterError("negative base in rat_pow");
    if (exponent == 0) return Rat(1);
    if (base == 0) {
        if (sgn(exponent) < 0) throw ParameterError("zero base with negative exponent");
        return Rat(0);
    }
    const bool invert = sgn(exponent) < 0;
    const unsigned long e = exponent_to_ulong(abs(exponent.get_num()));
    Int num = int_pow(base.get_num(), e);
    Int den = int_pow(base.get_den(), e);
    if (exponent.get_den() != 1) {
        const unsigned long root = exponent_to_ulong(exponent.get_den());
        Int rn, rd;
        const bool exact_num = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), root) != 0;
        const bool exact_den = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), root) != 0;
        if (!exact_num || !exact_den)
            throw ParameterError("power " + rat_to_string(base) + "^" + rat_to_string(exponent) +
                                 " is not a rational number");
        num = rn;
        den = rd;
    }
    Rat out(num);
    out /= Rat(den);
    if (invert) out = 1 / out;
    return out;
}

int compare_pow(const Rat& base1, const Rat& exp1, const Rat& base2, const Rat& exp2) {
    if (!is_probability(base1) || !is_probability(base2))
        throw ParameterError("compare_pow bases must lie in [0,1]");
    if (sgn(exp1) <= 0 || sgn(exp2) <= 0)
        throw ParameterError("compare_pow exponents must be positive");
    if (base1 == base2) {
        if (base1 == 0 || base1 == 1 || exp1 == exp2) return 0;
        return cmp(exp2, exp1);  // base in (0,1): larger exponent, smaller power
    }
    if (exp1 == exp2) return cmp(base1, base2);
    if (base1 == 0) return -1;
    if (base2 == 0) return 1;
    if (base1 == 1) return 1;  // base2 in (0,1), so base2^exp2 < 1
    if (base2 == 1) return -1;
    // Raise both sides to lcm(d1, d2); monotone for nonnegative values.
    Int l;
    mpz_lcm(l.get_mpz_t(), exp1.get_den().get_mpz_t(), exp2.get_den().get_mpz_t());
    const unsigned long e1 = exponent_to_ulong(exp1.get_num() * (l / exp1.get_den()));
    const unsigned long e2 = exponent_to_ulong(exp2.get_num() * (l / exp2.get_den()));
    const Int lhs = int_pow(base1.get_num(), e1) * int_pow(base2.get_den(), e2);
    const Int rhs = int_pow(base2.get_num(), e2) * int_pow(base1.get_den(), e1);
    return cmp(lhs, rhs);
}

bool is_probability(const Rat& value) {
    return sgn(value) >= 0 && value <= 1;
}

}  // namespace curlab
