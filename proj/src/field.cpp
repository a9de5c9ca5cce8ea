#include "pseq/field.hpp"

#include <algorithm>
#include <cstddef>

#include <json.hpp>

namespace pseq {
namespace {

// Dense polynomial arithmetic over Z_p used only during construction.
// Coefficient vectors are constant-term first and may carry trailing zeros.
using ZPoly = std::vector<int>;

int poly_degree(const ZPoly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

// Remainder of a modulo the monic polynomial f.
void poly_mod_inplace(ZPoly& a, const ZPoly& f, int p, int deg_f) {
    for (int i = static_cast<int>(a.size()) - 1; i >= deg_f; --i) {
        int c = a[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        a[static_cast<std::size_t>(i)] = 0;
        for (int k = 0; k < deg_f; ++k) {
            int& slot = a[static_cast<std::size_t>(i - deg_f + k)];
            slot = (slot - c * f[static_cast<std::size_t>(k)]) % p;
            if (slot < 0) slot += p;
        }
    }
    a.resize(static_cast<std::size_t>(deg_f));
}

ZPoly poly_mulmod(const ZPoly& a, const ZPoly& b, const ZPoly& f, int p, int deg_f) {
    ZPoly out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    poly_mod_inplace(out, f, p, deg_f);
    return out;
}

ZPoly poly_powmod(ZPoly base, std::int64_t e, const ZPoly& f, int p, int deg_f) {
    poly_mod_inplace(base, f, p, deg_f);
    ZPoly acc(static_cast<std::size_t>(deg_f), 0);
    if (deg_f > 0) acc[0] = 1;
    while (e > 0) {
        if (e & 1) acc = poly_mulmod(acc, base, f, p, deg_f);
        base = poly_mulmod(base, base, f, p, deg_f);
        e >>= 1;
    }
    return acc;
}

bool poly_is_x(const ZPoly& a) {
    if (a.size() < 2 || a[1] != 1) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (i != 1 && a[i] != 0) return false;
    return true;
}

std::vector<int> prime_divisors(std::int64_t m) {
    std::vector<int> out;
    for (std::int64_t r = 2; r * r <= m; ++r) {
        if (m % r == 0) {
            out.push_back(static_cast<int>(r));
            while (m % r == 0) m /= r;
        }
    }
    if (m > 1) out.push_back(static_cast<int>(m));
    return out;
}

// Rabin-style irreducibility check for monic f of degree n over Z_p:
// x^{p^n} = x (mod f) and x^{p^{n/r}} != x (mod f) for every prime r | n.
// Exact for the degrees reachable under kMaxQ (n <= 12); the problematic
// composite degrees (n = 15, ...) are out of range.
bool is_irreducible(const ZPoly& f, int p, int n) {
    if (n == 0) return false;
    ZPoly x(static_cast<std::size_t>(std::max(n, 2)), 0);
    if (n == 1) return true;  // monic linear
    x[1] = 1;

    std::vector<ZPoly> frob;  // frob[k] = x^{p^k} mod f
    frob.reserve(static_cast<std::size_t>(n) + 1);
    frob.push_back(x);
    for (int k = 1; k <= n; ++k)
        frob.push_back(poly_powmod(frob.back(), p, f, p, n));

    if (!poly_is_x(frob[static_cast<std::size_t>(n)])) return false;
    for (int r : prime_divisors(n))
        if (poly_is_x(frob[static_cast<std::size_t>(n / r)])) return false;
    return true;
}

bool is_prime(std::int64_t m) {
    if (m < 2) return false;
    for (std::int64_t r = 2; r * r <= m; ++r)
        if (m % r == 0) return false;
    return true;
}

std::uint32_t pack_digits(const ZPoly& coeffs, int p, int n) {
    std::uint32_t v = 0;
    for (int i = n - 1; i >= 0; --i)
        v = v * static_cast<std::uint32_t>(p) +
            static_cast<std::uint32_t>(i < static_cast<int>(coeffs.size()) ? coeffs[static_cast<std::size_t>(i)] : 0);
    return v;
}

ZPoly unpack_digits(std::uint32_t v, int p, int n) {
    ZPoly out(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::uint32_t>(p));
        v /= static_cast<std::uint32_t>(p);
    }
    return out;
}

// Lexicographic successor of the coefficient list [a0..a_{n-1}] with a0
// compared first, i.e. the last coordinate ticks fastest.
bool lex_next(ZPoly& a, int p) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
        if (++a[static_cast<std::size_t>(i)] < p) return true;
        a[static_cast<std::size_t>(i)] = 0;
    }
    return false;
}

bool has_order_q_minus_1(const ZPoly& candidate, const ZPoly& f, int p, int n, std::int64_t q,
                         const std::vector<int>& qm1_primes) {
    if (poly_degree(candidate) < 0) return false;
    ZPoly one = poly_powmod(candidate, q - 1, f, p, n);
    if (poly_degree(one) != 0 || one[0] != 1) return false;
    for (int r : qm1_primes) {
        ZPoly t = poly_powmod(candidate, (q - 1) / r, f, p, n);
        if (poly_degree(t) == 0 && t[0] == 1) return false;
    }
    return true;
}

}  // namespace

std::vector<int> FieldElement::coeffs() const {
    return unpack_digits(packed_, field_->p(), field_->n());
}

int FieldPoly::degree() const noexcept {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
        if (!coeffs[static_cast<std::size_t>(i)].is_zero()) return i;
    return 0;
}

bool FieldPoly::is_zero() const noexcept {
    for (const auto& c : coeffs)
        if (!c.is_zero()) return false;
    return true;
}

void FieldCtx::check_same_field(FieldElement x) const {
    if (&x.field() != this)
        throw Error(Errc::MixedFields, "element belongs to a different field");
}

FieldElement FieldCtx::from_packed(std::uint32_t v) const {
    if (v >= static_cast<std::uint32_t>(q_))
        throw std::invalid_argument("packed value out of range");
    return {this, v};
}

FieldElement FieldCtx::from_coeffs(const std::vector<int>& coeffs) const {
    if (static_cast<int>(coeffs.size()) > n_)
        throw std::invalid_argument("coefficient list longer than the extension degree");
    ZPoly norm(static_cast<std::size_t>(n_), 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        int c = coeffs[i] % p_;
        if (c < 0) c += p_;
        norm[i] = c;
    }
    return {this, pack_digits(norm, p_, n_)};
}

FieldElement FieldCtx::from_dlog(std::int64_t e) const {
    e %= (q_ - 1);
    if (e < 0) e += q_ - 1;
    return {this, antilog_[static_cast<std::size_t>(e)]};
}

FieldElement FieldCtx::scalar(std::int64_t c) const {
    c %= p_;
    if (c < 0) c += p_;
    return {this, static_cast<std::uint32_t>(c)};
}

std::uint32_t FieldCtx::add_packed(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t out = 0, scale = 1;
    const auto up = static_cast<std::uint32_t>(p_);
    for (int i = 0; i < n_; ++i) {
        std::uint32_t s = a % up + b % up;
        if (s >= up) s -= up;
        out += s * scale;
        a /= up;
        b /= up;
        scale *= up;
    }
    return out;
}

FieldElement FieldCtx::add(FieldElement x, FieldElement y) const {
    check_same_field(x);
    check_same_field(y);
    return {this, add_packed(x.packed(), y.packed())};
}

FieldElement FieldCtx::neg(FieldElement x) const {
    check_same_field(x);
    std::uint32_t v = x.packed(), out = 0, scale = 1;
    const auto up = static_cast<std::uint32_t>(p_);
    for (int i = 0; i < n_; ++i) {
        std::uint32_t d = v % up;
        out += (d == 0 ? 0 : up - d) * scale;
        v /= up;
        scale *= up;
    }
    return {this, out};
}

FieldElement FieldCtx::sub(FieldElement x, FieldElement y) const { return add(x, neg(y)); }

FieldElement FieldCtx::mul(FieldElement x, FieldElement y) const {
    check_same_field(x);
    check_same_field(y);
    if (x.is_zero() || y.is_zero()) return zero();
    std::int64_t e = log_[x.packed()] + log_[y.packed()];
    if (e >= q_ - 1) e -= q_ - 1;
    return {this, antilog_[static_cast<std::size_t>(e)]};
}

FieldElement FieldCtx::inv(FieldElement x) const {
    check_same_field(x);
    if (x.is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
    std::int64_t e = (q_ - 1 - log_[x.packed()]) % (q_ - 1);
    return {this, antilog_[static_cast<std::size_t>(e)]};
}

FieldElement FieldCtx::pow(FieldElement x, std::int64_t k) const {
    check_same_field(x);
    if (x.is_zero()) {
        if (k < 0) throw Error(Errc::DivisionByZero, "negative power of zero");
        return k == 0 ? one() : zero();
    }
    std::int64_t e = (log_[x.packed()] % (q_ - 1)) * (k % (q_ - 1)) % (q_ - 1);
    if (e < 0) e += q_ - 1;
    return {this, antilog_[static_cast<std::size_t>(e)]};
}

int FieldCtx::trace(FieldElement x) const {
    check_same_field(x);
    return trace_pk_[x.packed()];
}

std::int64_t FieldCtx::dlog(FieldElement x) const {
    check_same_field(x);
    if (x.is_zero()) throw Error(Errc::LogOfZero, "discrete log of zero");
    return log_[x.packed()];
}

int FieldCtx::eta(FieldElement x) const {
    check_same_field(x);
    if (x.is_zero()) return 0;
    return (log_[x.packed()] & 1) ? -1 : +1;
}

std::unique_ptr<FieldCtx> build_field(int p, int n, const std::optional<std::vector<int>>& modulus,
                                      const std::optional<std::vector<int>>& alpha) {
    if (!is_prime(p)) throw Error(Errc::NotPrime, "p must be prime");
    if (p % 4 != 3) throw Error(Errc::WrongResidueClass, "p must be 3 (mod 4)");
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (n % 2 == 0) throw Error(Errc::EvenDegree, "n must be odd");

    std::int64_t q = 1;
    for (int i = 0; i < n; ++i) {
        q *= p;
        if (q > FieldCtx::kMaxQ)
            throw Error(Errc::ScaleTooLarge, "q exceeds the table-backed limit of 10^6");
    }

    auto ctx = std::unique_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->n_ = n;
    ctx->q_ = q;
    ctx->half_ = (q - 1) / 2;

    // Modulus: supplied (validated) or lexicographically first irreducible.
    if (modulus) {
        ZPoly f = *modulus;
        if (static_cast<int>(f.size()) != n + 1)
            throw std::invalid_argument("modulus must have n+1 coefficients");
        for (int& c : f) {
            c %= p;
            if (c < 0) c += p;
        }
        if (f[static_cast<std::size_t>(n)] != 1)
            throw std::invalid_argument("modulus must be monic");
        if (!is_irreducible(f, p, n))
            throw Error(Errc::ReducibleModulus, "modulus is reducible over Z_p");
        ctx->modulus_ = f;
    } else {
        ZPoly low(static_cast<std::size_t>(n), 0);
        ZPoly found;
        do {
            ZPoly f = low;
            f.push_back(1);
            if (is_irreducible(f, p, n)) {
                found = f;
                break;
            }
        } while (lex_next(low, p));
        if (found.empty())
            throw std::logic_error("no irreducible modulus found");  // unreachable
        ctx->modulus_ = found;
    }
    const ZPoly& f = ctx->modulus_;

    const auto qm1_primes = prime_divisors(q - 1);

    // Primitive element: supplied (order checked) or lexicographically
    // smallest element of order q-1.
    ZPoly alpha_poly;
    if (alpha) {
        if (static_cast<int>(alpha->size()) > n)
            throw std::invalid_argument("primitive element has too many coefficients");
        alpha_poly.assign(static_cast<std::size_t>(n), 0);
        for (std::size_t i = 0; i < alpha->size(); ++i) {
            int c = (*alpha)[i] % p;
            if (c < 0) c += p;
            alpha_poly[i] = c;
        }
        if (!has_order_q_minus_1(alpha_poly, f, p, n, q, qm1_primes))
            throw Error(Errc::NotPrimitive, "supplied element does not generate F_q^*");
    } else {
        ZPoly cand(static_cast<std::size_t>(n), 0);
        bool found = false;
        while (lex_next(cand, p)) {
            if (has_order_q_minus_1(cand, f, p, n, q, qm1_primes)) {
                alpha_poly = cand;
                found = true;
                break;
            }
        }
        if (!found) throw Error(Errc::NotPrimitive, "no primitive element found");  // unreachable
    }
    ctx->alpha_ = pack_digits(alpha_poly, p, n);

    // Log / antilog tables by repeated multiplication; the walk itself
    // certifies that alpha has order exactly q-1.
    ctx->log_.assign(static_cast<std::size_t>(q), -1);
    ctx->antilog_.assign(static_cast<std::size_t>(q - 1), 0);
    ZPoly cur(static_cast<std::size_t>(n), 0);
    cur[0] = 1;
    for (std::int64_t e = 0; e < q - 1; ++e) {
        std::uint32_t v = pack_digits(cur, p, n);
        if (ctx->log_[v] != -1)
            throw Error(Errc::NotPrimitive, "element order below q-1");
        ctx->log_[v] = static_cast<std::int32_t>(e);
        ctx->antilog_[static_cast<std::size_t>(e)] = v;
        cur = poly_mulmod(cur, alpha_poly, f, p, n);
    }
    if (poly_degree(cur) != 0 || cur[0] != 1)
        throw Error(Errc::NotPrimitive, "element order exceeds q-1");  // unreachable

    // Traces: Tr(alpha^e) via Frobenius orbits in the exponent domain.
    ctx->trace_exp_.assign(static_cast<std::size_t>(q - 1), 0);
    ctx->trace_pk_.assign(static_cast<std::size_t>(q), 0);
    for (std::int64_t e = 0; e < q - 1; ++e) {
        std::uint32_t acc = 0;
        std::int64_t fe = e;
        for (int i = 0; i < n; ++i) {
            acc = ctx->add_packed(acc, ctx->antilog_[static_cast<std::size_t>(fe)]);
            fe = fe * p % (q - 1);
        }
        ctx->trace_exp_[static_cast<std::size_t>(e)] = acc % static_cast<std::uint32_t>(p);
        ctx->trace_pk_[ctx->antilog_[static_cast<std::size_t>(e)]] =
            ctx->trace_exp_[static_cast<std::size_t>(e)];
    }
    return ctx;
}

std::string field_to_json(const FieldCtx& ctx) {
    nlohmann::ordered_json j;
    j["p"] = ctx.p();
    j["n"] = ctx.n();
    j["modulus"] = ctx.modulus();
    j["alpha"] = ctx.alpha().coeffs();
    return j.dump();
}

std::unique_ptr<FieldCtx> field_from_json(std::string_view text) {
    auto j = nlohmann::json::parse(text);
    return build_field(j.at("p").get<int>(), j.at("n").get<int>(),
                       j.at("modulus").get<std::vector<int>>(),
                       j.at("alpha").get<std::vector<int>>());
}

}  // namespace pseq
