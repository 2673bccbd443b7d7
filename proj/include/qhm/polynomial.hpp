#ifndef QHM_POLYNOMIAL_HPP
#define QHM_POLYNOMIAL_HPP

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qhm {

/// Polynomial in the non-commuting letters X and P with complex coefficients.
///
/// Words are strings over {'X','P'}; the empty word is the identity. Products
/// concatenate words, so ordering is preserved exactly and realization on a
/// grid is deferred to Representation::realize.
class Polynomial {
public:
    using Word = std::string;
    using Coeff = std::complex<double>;

    Polynomial() = default;

    static Polynomial constant(Coeff c) { return monomial("", c); }
    static Polynomial x() { return monomial("X"); }
    static Polynomial p() { return monomial("P"); }
    static Polynomial monomial(std::string_view w, Coeff c = 1.0) {
        for (char ch : w) {
            if (ch != 'X' && ch != 'P') throw std::invalid_argument("polynomial: letters must be X or P");
        }
        Polynomial r;
        if (c != Coeff(0.0)) r.terms_.emplace(Word(w), c);
        return r;
    }

    const std::map<Word, Coeff>& terms() const noexcept { return terms_; }

    Coeff coefficient(std::string_view w) const {
        auto it = terms_.find(Word(w));
        return it == terms_.end() ? Coeff(0.0) : it->second;
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }
    Polynomial& operator*=(Coeff c) {
        if (c == Coeff(0.0)) {
            terms_.clear();
        } else {
            for (auto& [w, v] : terms_) v *= c;
        }
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Coeff c, Polynomial a) { return a *= c; }
    friend Polynomial operator*(Polynomial a, Coeff c) { return a *= c; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        for (const auto& [wa, ca] : a.terms_) {
            for (const auto& [wb, cb] : b.terms_) r.add(wa + wb, ca * cb);
        }
        return r;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void add(const Word& w, Coeff c) {
        auto [it, inserted] = terms_.emplace(w, c);
        if (!inserted) it->second += c;
        if (it->second == Coeff(0.0)) terms_.erase(it);
    }

    std::map<Word, Coeff> terms_;
};

inline Polynomial commutator(const Polynomial& a, const Polynomial& b) { return a * b - b * a; }
inline Polynomial anticommutator(const Polynomial& a, const Polynomial& b) { return a * b + b * a; }

} // namespace qhm

#endif // QHM_POLYNOMIAL_HPP
