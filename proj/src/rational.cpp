#include "mumford/rational.hpp"

#include <stdexcept>

namespace mumford {

long valuation(const Z& x, unsigned long p) {
    if (x == 0) return kInfVal;
    Z t = abs(x);
    long v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++v;
    }
    return v;
}

long valuation(const Q& x, unsigned long p) {
    if (x == 0) return kInfVal;
    return valuation(Z(x.get_num()), p) - valuation(Z(x.get_den()), p);
}

Q qpow(unsigned long p, long k) {
    Z b;
    mpz_ui_pow_ui(b.get_mpz_t(), p, static_cast<unsigned long>(k < 0 ? -k : k));
    if (k >= 0) return Q(b);
    return Q(Z(1), b);
}

Q parseRational(const std::string& s) {
    Q r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational: '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

std::string toString(const Q& x) {
    return x.get_str();
}

} // namespace mumford
