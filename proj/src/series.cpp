#include "tcore/series.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace tcore {

// ---------------------------------------------------------------------------
// CoefficientRing
// ---------------------------------------------------------------------------

CoefficientRing CoefficientRing::mod(std::uint32_t m) {
    if (m < 2)
        throw std::invalid_argument("modulus must be at least 2");
    return CoefficientRing(m);
}

std::uint32_t CoefficientRing::modulus() const {
    if (m_ == 0)
        throw std::invalid_argument("exact ring has no modulus");
    return m_;
}

BigInt CoefficientRing::canonical(const BigInt& x) const {
    if (m_ == 0)
        return x;
    BigInt r = x % m_;
    if (r < 0)
        r += m_;
    return r;
}

namespace {

std::uint32_t to_residue(const BigInt& x, std::uint32_t m) {
    BigInt r = x % m;
    if (r < 0)
        r += m;
    return static_cast<std::uint32_t>(r);
}

std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t m) {
    std::uint64_t s = std::uint64_t(a) + b;
    if (s >= m)
        s -= m;
    return static_cast<std::uint32_t>(s);
}

std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t m) {
    return a >= b ? a - b : a + m - b;
}

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t m) {
    return static_cast<std::uint32_t>(std::uint64_t(a) * b % m);
}

// Inverse of a mod m via the extended Euclidean algorithm, or m if a is not
// a unit.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t m) {
    std::int64_t r0 = m, r1 = a % m, s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1)
        return m;
    return static_cast<std::uint32_t>(((s0 % m) + m) % m);
}

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t nbits) { return (nbits + kWordBits - 1) / kWordBits; }

bool get_bit(const std::vector<std::uint64_t>& w, std::size_t i) {
    return (w[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void set_bit(std::vector<std::uint64_t>& w, std::size_t i, bool v) {
    std::uint64_t mask = std::uint64_t(1) << (i % kWordBits);
    if (v)
        w[i / kWordBits] |= mask;
    else
        w[i / kWordBits] &= ~mask;
}

// Zero any bits at positions >= nbits in the final word.
void mask_top(std::vector<std::uint64_t>& w, std::size_t nbits) {
    std::size_t rem = nbits % kWordBits;
    if (rem != 0 && !w.empty())
        w.back() &= (std::uint64_t(1) << rem) - 1;
}

// dst ^= (src << shift), truncated at nbits.  src and dst must be distinct;
// src may hold fewer or more words than dst needs.
void xor_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src,
                 std::size_t shift, std::size_t nbits) {
    std::size_t ws = shift / kWordBits, rs = shift % kWordBits;
    std::size_t nw = word_count(nbits);
    for (std::size_t i = ws; i < nw; ++i) {
        std::size_t idx = i - ws;
        std::uint64_t v = 0;
        if (idx < src.size())
            v = src[idx] << rs;
        if (rs != 0 && idx >= 1 && idx - 1 < src.size())
            v |= src[idx - 1] >> (kWordBits - rs);
        if (v != 0)
            dst[i] ^= v;
    }
    mask_top(dst, nbits);
}

// w ^= (w << shift), truncated at nbits; uses the pre-update value of w
// throughout.  Descending word order makes the in-place update safe: each
// source word is read before any write could touch it.
void xor_shifted_inplace(std::vector<std::uint64_t>& w, std::size_t shift,
                         std::size_t nbits) {
    if (shift == 0 || shift >= nbits)
        return;
    std::size_t ws = shift / kWordBits, rs = shift % kWordBits;
    std::size_t nw = word_count(nbits);
    if (rs == 0) {
        for (std::size_t i = nw; i-- > ws;)
            w[i] ^= w[i - ws];
    } else {
        for (std::size_t i = nw; i-- > ws;) {
            std::uint64_t v = w[i - ws] << rs;
            if (i - ws >= 1)
                v |= w[i - ws - 1] >> (kWordBits - rs);
            w[i] ^= v;
        }
    }
    mask_top(w, nbits);
}

std::size_t popcount_words(const std::vector<std::uint64_t>& w) {
    std::size_t c = 0;
    for (std::uint64_t x : w)
        c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
}

// Indices of nonzero coefficients, in increasing order.
template <typename Vec, typename IsZero>
std::vector<std::size_t> support_of(const Vec& v, IsZero is_zero) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!is_zero(v[i]))
            s.push_back(i);
    return s;
}

std::vector<std::size_t> support_bits(const std::vector<std::uint64_t>& w,
                                      std::size_t nbits) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < nbits; ++i)
        if (get_bit(w, i))
            s.push_back(i);
    return s;
}

void require_same_ring(const TruncatedSeries& f, const TruncatedSeries& g) {
    if (f.ring() != g.ring())
        throw std::invalid_argument("coefficient ring mismatch");
}

} // namespace

// ---------------------------------------------------------------------------
// TruncatedSeries basics
// ---------------------------------------------------------------------------

TruncatedSeries::TruncatedSeries(CoefficientRing ring, std::size_t len)
    : ring_(ring), len_(len) {
    if (len == 0)
        throw std::invalid_argument("series length must be at least 1");
    switch (backend()) {
    case Backend::Exact: exact_.assign(len, BigInt(0)); break;
    case Backend::Word: words_.assign(len, 0); break;
    case Backend::Bits: bits_.assign(word_count(len), 0); break;
    }
}

TruncatedSeries::TruncatedSeries(CoefficientRing ring, const std::vector<BigInt>& coeffs)
    : TruncatedSeries(ring, coeffs.size()) {
    switch (backend()) {
    case Backend::Exact:
        exact_.assign(coeffs.begin(), coeffs.end());
        break;
    case Backend::Word: {
        std::uint32_t m = ring_.modulus();
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            words_[i] = to_residue(coeffs[i], m);
        break;
    }
    case Backend::Bits:
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            set_bit(bits_, i, to_residue(coeffs[i], 2) != 0);
        break;
    }
}

TruncatedSeries::Backend TruncatedSeries::backend() const {
    if (ring_.is_exact())
        return Backend::Exact;
    return ring_.modulus() == 2 ? Backend::Bits : Backend::Word;
}

TruncatedSeries TruncatedSeries::zero(CoefficientRing ring, std::size_t length) {
    return TruncatedSeries(ring, length);
}

TruncatedSeries TruncatedSeries::one(CoefficientRing ring, std::size_t length) {
    TruncatedSeries s(ring, length);
    switch (s.backend()) {
    case Backend::Exact: s.exact_[0] = 1; break;
    case Backend::Word: s.words_[0] = 1 % ring.modulus(); break;
    case Backend::Bits: set_bit(s.bits_, 0, true); break;
    }
    return s;
}

BigInt TruncatedSeries::coeff(std::size_t n) const {
    if (n >= len_)
        throw std::out_of_range("coefficient index " + std::to_string(n) +
                                " >= length " + std::to_string(len_));
    switch (backend()) {
    case Backend::Exact: return exact_[n];
    case Backend::Word: return BigInt(words_[n]);
    case Backend::Bits: return BigInt(get_bit(bits_, n) ? 1 : 0);
    }
    return BigInt(0); // unreachable
}

std::vector<BigInt> TruncatedSeries::coeffs() const {
    std::vector<BigInt> out(len_);
    for (std::size_t i = 0; i < len_; ++i)
        out[i] = coeff(i);
    return out;
}

std::size_t TruncatedSeries::nonzero_count() const {
    switch (backend()) {
    case Backend::Exact:
        return static_cast<std::size_t>(
            std::count_if(exact_.begin(), exact_.end(),
                          [](const BigInt& x) { return x != 0; }));
    case Backend::Word:
        return static_cast<std::size_t>(
            std::count_if(words_.begin(), words_.end(),
                          [](std::uint32_t x) { return x != 0; }));
    case Backend::Bits:
        return popcount_words(bits_);
    }
    return 0; // unreachable
}

bool TruncatedSeries::operator==(const TruncatedSeries& other) const {
    if (ring_ != other.ring_ || len_ != other.len_)
        return false;
    switch (backend()) {
    case Backend::Exact: return exact_ == other.exact_;
    case Backend::Word: return words_ == other.words_;
    case Backend::Bits: return bits_ == other.bits_;
    }
    return false; // unreachable
}

// ---------------------------------------------------------------------------
// Addition / subtraction
// ---------------------------------------------------------------------------

namespace {

template <typename Op>
TruncatedSeries pointwise(const TruncatedSeries& f, const TruncatedSeries& g, Op op) {
    std::size_t n = std::min(f.length(), g.length());
    std::vector<BigInt> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = op(f.coeff(i), g.coeff(i));
    return TruncatedSeries(f.ring(), out);
}

} // namespace

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
    require_same_ring(f, g);
    std::size_t n = std::min(f.len_, g.len_);
    TruncatedSeries out(f.ring_, n);
    switch (out.backend()) {
    case TruncatedSeries::Backend::Exact:
        for (std::size_t i = 0; i < n; ++i)
            out.exact_[i] = f.exact_[i] + g.exact_[i];
        break;
    case TruncatedSeries::Backend::Word: {
        std::uint32_t m = f.ring_.modulus();
        for (std::size_t i = 0; i < n; ++i)
            out.words_[i] = add_mod(f.words_[i], g.words_[i], m);
        break;
    }
    case TruncatedSeries::Backend::Bits:
        for (std::size_t i = 0; i < out.bits_.size(); ++i)
            out.bits_[i] = f.bits_[i] ^ g.bits_[i];
        mask_top(out.bits_, n);
        break;
    }
    return out;
}

TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g) {
    require_same_ring(f, g);
    if (f.ring_.is_mod() && f.ring_.modulus() == 2)
        return add(f, g); // -1 == 1 mod 2
    return pointwise(f, g, [&](const BigInt& a, const BigInt& b) { return a - b; });
}

// ---------------------------------------------------------------------------
// Multiplication
// ---------------------------------------------------------------------------

TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g) {
    require_same_ring(f, g);
    std::size_t n = std::min(f.len_, g.len_);
    // Iterate over the sparser operand's support; each of its terms
    // contributes a full shifted copy of the other operand.  The result is
    // still the exact convolution -- skipped terms are zero.
    const TruncatedSeries& a = f.nonzero_count() <= g.nonzero_count() ? f : g;
    const TruncatedSeries& b = &a == &f ? g : f;
    TruncatedSeries out(f.ring_, n);
    switch (out.backend()) {
    case TruncatedSeries::Backend::Exact: {
        std::vector<std::size_t> supp =
            support_of(a.exact_, [](const BigInt& x) { return x == 0; });
        for (std::size_t j : supp) {
            if (j >= n)
                break;
            const BigInt& aj = a.exact_[j];
            for (std::size_t i = 0; i + j < n && i < b.len_; ++i) {
                const BigInt& bi = b.exact_[i];
                if (bi != 0)
                    out.exact_[i + j] += aj * bi;
            }
        }
        break;
    }
    case TruncatedSeries::Backend::Word: {
        std::uint32_t m = f.ring_.modulus();
        std::vector<std::size_t> supp =
            support_of(a.words_, [](std::uint32_t x) { return x == 0; });
        for (std::size_t j : supp) {
            if (j >= n)
                break;
            std::uint32_t aj = a.words_[j];
            for (std::size_t i = 0; i + j < n && i < b.len_; ++i) {
                std::uint32_t bi = b.words_[i];
                if (bi != 0)
                    out.words_[i + j] =
                        add_mod(out.words_[i + j], mul_mod(aj, bi, m), m);
            }
        }
        break;
    }
    case TruncatedSeries::Backend::Bits: {
        std::vector<std::size_t> supp = support_bits(a.bits_, std::min(a.len_, n));
        for (std::size_t j : supp)
            xor_shifted(out.bits_, b.bits_, j, n);
        break;
    }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reciprocal
// ---------------------------------------------------------------------------

// All three backends run the same recurrence.  With f = sum c(i) q^i and
// r = 1/f:  r(0) = c(0)^-1,  r(n) = -c(0)^-1 * sum_{i>=1} c(i) r(n-i),
// where i ranges over the support of f.  For sparse f (the Euler products
// this library cares about have O(sqrt(len)) terms) the total cost is
// O(len * |support|).
TruncatedSeries reciprocal(const TruncatedSeries& f) {
    std::size_t n = f.len_;
    TruncatedSeries out(f.ring_, n);
    switch (f.backend()) {
    case TruncatedSeries::Backend::Exact: {
        const BigInt& c0 = f.exact_[0];
        if (c0 != 1 && c0 != -1)
            throw std::invalid_argument(
                "constant term is not a unit in the exact ring");
        std::vector<std::size_t> supp;
        for (std::size_t i = 1; i < n; ++i)
            if (f.exact_[i] != 0)
                supp.push_back(i);
        out.exact_[0] = c0;
        for (std::size_t k = 1; k < n; ++k) {
            BigInt acc = 0;
            for (std::size_t i : supp) {
                if (i > k)
                    break;
                acc += f.exact_[i] * out.exact_[k - i];
            }
            if (acc != 0)
                out.exact_[k] = c0 == 1 ? -acc : acc;
        }
        break;
    }
    case TruncatedSeries::Backend::Word: {
        std::uint32_t m = f.ring_.modulus();
        std::uint32_t inv0 = inverse_mod(f.words_[0], m);
        if (inv0 == m)
            throw std::invalid_argument("constant term is not a unit mod " +
                                        std::to_string(m));
        std::vector<std::size_t> supp;
        for (std::size_t i = 1; i < n; ++i)
            if (f.words_[i] != 0)
                supp.push_back(i);
        out.words_[0] = inv0;
        for (std::size_t k = 1; k < n; ++k) {
            std::uint64_t acc = 0;
            for (std::size_t i : supp) {
                if (i > k)
                    break;
                acc += std::uint64_t(mul_mod(f.words_[i], out.words_[k - i], m));
                if (acc >= (std::uint64_t(1) << 63))
                    acc %= m;
            }
            std::uint32_t s = static_cast<std::uint32_t>(acc % m);
            out.words_[k] = mul_mod(sub_mod(0, s, m), inv0, m);
        }
        break;
    }
    case TruncatedSeries::Backend::Bits: {
        if (!get_bit(f.bits_, 0))
            throw std::invalid_argument("constant term is not a unit mod 2");
        std::vector<std::size_t> supp;
        for (std::size_t i = 1; i < n; ++i)
            if (get_bit(f.bits_, i))
                supp.push_back(i);
        set_bit(out.bits_, 0, true);
        for (std::size_t k = 1; k < n; ++k) {
            bool acc = false;
            for (std::size_t i : supp) {
                if (i > k)
                    break;
                acc ^= get_bit(out.bits_, k - i);
            }
            if (acc)
                set_bit(out.bits_, k, true);
        }
        break;
    }
    }
    return out;
}

TruncatedSeries div(const TruncatedSeries& f, const TruncatedSeries& g) {
    require_same_ring(f, g);
    std::size_t n = std::min(f.length(), g.length());
    // Truncate both operands to n first so the reciprocal is not computed
    // past the needed order.
    if (g.length() > n) {
        std::vector<BigInt> gc = g.coeffs();
        gc.resize(n);
        return mul(f, reciprocal(TruncatedSeries(g.ring(), gc)));
    }
    return mul(f, reciprocal(g));
}

// ---------------------------------------------------------------------------
// reduce_mod / shifted
// ---------------------------------------------------------------------------

TruncatedSeries reduce_mod(const TruncatedSeries& f, std::uint32_t m) {
    CoefficientRing target = CoefficientRing::mod(m);
    if (f.ring_.is_mod() && f.ring_.modulus() % m != 0)
        throw std::invalid_argument("reduce_mod: new modulus " + std::to_string(m) +
                                    " does not divide " +
                                    std::to_string(f.ring_.modulus()));
    TruncatedSeries out(target, f.len_);
    switch (f.backend()) {
    case TruncatedSeries::Backend::Exact:
        if (m == 2) {
            for (std::size_t i = 0; i < f.len_; ++i)
                set_bit(out.bits_, i, to_residue(f.exact_[i], 2) != 0);
        } else {
            for (std::size_t i = 0; i < f.len_; ++i)
                out.words_[i] = to_residue(f.exact_[i], m);
        }
        break;
    case TruncatedSeries::Backend::Word:
        if (m == 2) {
            for (std::size_t i = 0; i < f.len_; ++i)
                set_bit(out.bits_, i, (f.words_[i] & 1u) != 0);
        } else {
            for (std::size_t i = 0; i < f.len_; ++i)
                out.words_[i] = f.words_[i] % m;
        }
        break;
    case TruncatedSeries::Backend::Bits:
        out.bits_ = f.bits_; // m must be 2 here
        break;
    }
    return out;
}

TruncatedSeries shifted(const TruncatedSeries& f, std::size_t k) {
    TruncatedSeries out(f.ring_, f.len_ + k);
    switch (f.backend()) {
    case TruncatedSeries::Backend::Exact:
        std::copy(f.exact_.begin(), f.exact_.end(), out.exact_.begin() + k);
        break;
    case TruncatedSeries::Backend::Word:
        std::copy(f.words_.begin(), f.words_.end(), out.words_.begin() + k);
        break;
    case TruncatedSeries::Backend::Bits:
        xor_shifted(out.bits_, f.bits_, k, out.len_);
        break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Euler products
// ---------------------------------------------------------------------------

namespace {

// (q^a; q^a)^e over the exact ring via the logarithmic derivative: with
// F = prod (1 - q^{a k})^e,  q F'/F = -e * sum_{k>=1} a k q^{a k}/(1 - q^{a k}),
// so  n c(n) = sum_{j=1..n} A(j) c(n-j)  with  A(j) = -e a sigma(j / a)
// when a | j and 0 otherwise.  Each c(n) costs one pass over the support of
// the partial result, which stays tiny for the sparse products used here.
std::vector<BigInt> euler_exact(std::int64_t a, std::int64_t e, std::size_t n) {
    std::size_t top = (n - 1) / static_cast<std::size_t>(a);
    std::vector<std::int64_t> sigma(top + 1, 0);
    for (std::size_t d = 1; d <= top; ++d)
        for (std::size_t k = d; k <= top; k += d)
            sigma[k] += static_cast<std::int64_t>(d);

    std::vector<BigInt> c(n);
    c[0] = 1;
    std::vector<std::size_t> supp{0};
    for (std::size_t k = 1; k < n; ++k) {
        BigInt acc = 0;
        for (std::size_t i : supp) {
            std::size_t j = k - i;
            if (j % static_cast<std::size_t>(a) != 0)
                continue;
            acc -= BigInt(e * a * sigma[j / static_cast<std::size_t>(a)]) * c[i];
        }
        if (acc != 0) {
            BigInt q = acc / static_cast<std::int64_t>(k);
            c[k] = q;
            supp.push_back(k);
        }
    }
    return c;
}

} // namespace

TruncatedSeries euler_product(std::int64_t a, std::int64_t e, std::size_t length,
                              CoefficientRing ring) {
    if (a < 1)
        throw std::invalid_argument("euler_product: step must be positive");
    if (length == 0)
        throw std::invalid_argument("series length must be at least 1");
    if (e == 0)
        return TruncatedSeries::one(ring, length);
    if (e < 0)
        return reciprocal(euler_product(a, -e, length, ring));

    TruncatedSeries out = TruncatedSeries::one(ring, length);
    switch (out.backend()) {
    case TruncatedSeries::Backend::Exact:
        out.exact_ = euler_exact(a, e, length);
        break;
    case TruncatedSeries::Backend::Word: {
        // Multiply by each factor (1 - q^{ak}) as an in-place elimination
        // pass: c(i + ak) -= c(i), descending i.
        std::uint32_t m = out.ring_.modulus();
        for (std::size_t step = static_cast<std::size_t>(a); step < length;
             step += static_cast<std::size_t>(a)) {
            for (std::int64_t pass = 0; pass < e; ++pass) {
                for (std::size_t i = length - step; i-- > 0;) {
                    std::uint32_t v = out.words_[i];
                    if (v != 0)
                        out.words_[i + step] = sub_mod(out.words_[i + step], v, m);
                }
            }
        }
        break;
    }
    case TruncatedSeries::Backend::Bits:
        for (std::size_t step = static_cast<std::size_t>(a); step < length;
             step += static_cast<std::size_t>(a)) {
            for (std::int64_t pass = 0; pass < e; ++pass)
                xor_shifted_inplace(out.bits_, step, length);
        }
        break;
    }
    return out;
}

} // namespace tcore
