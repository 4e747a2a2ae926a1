#include <apncodes/cycint.hpp>
#include <apncodes/error.hpp>
#include <apncodes/field.hpp>

#include <sstream>

namespace apncodes {

CycInt::CycInt(std::uint32_t p) : p_(p), c_(p - 1) {}

CycInt::CycInt(std::uint32_t p, std::vector<mpz_class> coeffs) : p_(p), c_(std::move(coeffs)) {
    if (c_.size() != p - 1) fail(ErrorCode::UsageError, "cyclotomic integer needs p-1 coefficients");
}

CycInt CycInt::canonical(std::uint32_t p, std::vector<mpz_class> full) {
    CycInt z(p);
    const mpz_class& top = full[p - 1];
    for (std::uint32_t i = 0; i + 1 < p; ++i) z.c_[i] = full[i] - top;
    return z;
}

std::vector<mpz_class> CycInt::full() const {
    std::vector<mpz_class> f(c_);
    f.emplace_back(0);
    return f;
}

CycInt CycInt::integer(std::uint32_t p, const mpz_class& n) {
    CycInt z(p);
    z.c_[0] = n;
    return z;
}

CycInt CycInt::omega_power(std::uint32_t p, std::int64_t k) {
    std::vector<mpz_class> f(p);
    std::int64_t r = k % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    f[static_cast<std::size_t>(r)] = 1;
    return canonical(p, std::move(f));
}

CycInt CycInt::from_trace_histogram(std::uint32_t p, std::span<const std::uint64_t> hist) {
    if (hist.size() != p) fail(ErrorCode::UsageError, "trace histogram must have p entries");
    std::vector<mpz_class> f(p);
    for (std::uint32_t t = 0; t < p; ++t) {
        mpz_import(f[t].get_mpz_t(), 1, -1, sizeof(std::uint64_t), 0, 0, &hist[t]);
    }
    return canonical(p, std::move(f));
}

CycInt CycInt::from_trace_histogram(std::uint32_t p, std::span<const mpz_class> hist) {
    if (hist.size() != p) fail(ErrorCode::UsageError, "trace histogram must have p entries");
    return canonical(p, std::vector<mpz_class>(hist.begin(), hist.end()));
}

bool CycInt::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool CycInt::is_integer() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

std::optional<mpz_class> CycInt::as_integer() const {
    if (!is_integer()) return std::nullopt;
    return c_.empty() ? mpz_class(0) : c_[0];
}

CycInt CycInt::operator-() const {
    CycInt z(*this);
    for (auto& c : z.c_) c = -c;
    return z;
}

CycInt& CycInt::operator+=(const CycInt& o) {
    if (p_ != o.p_) fail(ErrorCode::UsageError, "mixing cyclotomic rings");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) {
    if (p_ != o.p_) fail(ErrorCode::UsageError, "mixing cyclotomic rings");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CycInt CycInt::operator*(const CycInt& o) const {
    if (p_ != o.p_) fail(ErrorCode::UsageError, "mixing cyclotomic rings");
    std::vector<mpz_class> f(p_);
    const std::size_t d = c_.size();
    for (std::size_t i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            std::size_t k = i + j;
            if (k >= p_) k -= p_;
            mpz_addmul(f[k].get_mpz_t(), c_[i].get_mpz_t(), o.c_[j].get_mpz_t());
        }
    }
    return canonical(p_, std::move(f));
}

CycInt CycInt::scale(const mpz_class& k) const {
    CycInt z(*this);
    for (auto& c : z.c_) c *= k;
    return z;
}

CycInt CycInt::rotate(std::int64_t k) const {
    std::int64_t r = k % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    std::vector<mpz_class> src = full();
    std::vector<mpz_class> f(p_);
    for (std::uint32_t i = 0; i < p_; ++i) f[(i + static_cast<std::uint32_t>(r)) % p_] = src[i];
    return canonical(p_, std::move(f));
}

CycInt CycInt::div_exact(const mpz_class& d) const {
    CycInt z(*this);
    for (auto& c : z.c_) {
        if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) {
            fail(ErrorCode::IdentityViolated, "inexact division of " + pretty() + " by " + d.get_str());
        }
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    }
    return z;
}

CycInt CycInt::conj() const {
    std::vector<mpz_class> src = full();
    std::vector<mpz_class> f(p_);
    for (std::uint32_t i = 0; i < p_; ++i) f[(p_ - i) % p_] = src[i];
    return canonical(p_, std::move(f));
}

std::strong_ordering CycInt::operator<=>(const CycInt& o) const {
    if (p_ != o.p_) return p_ <=> o.p_;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        int c = cmp(c_[i], o.c_[i]);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::string CycInt::pretty() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const mpz_class& c = c_[i];
        if (c == 0) continue;
        mpz_class mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << "·";
            os << "ω";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

std::optional<std::string> CycInt::symbolic() const {
    if (is_zero()) return std::string("0");
    const std::string root = p_ % 4 == 3 ? "sqrt(-" + std::to_string(p_) + ")" : "sqrt(" + std::to_string(p_) + ")";
    if (auto n = as_integer()) {
        mpz_class mag = abs(*n);
        unsigned j = 0;
        while (mag % p_ == 0) {
            mag /= p_;
            ++j;
        }
        if (mag != 1) return std::nullopt;
        return std::string(*n < 0 ? "-" : "") + std::to_string(p_) + "^" + std::to_string(j);
    }
    const CycInt g = gauss_sum(p_);
    std::size_t i = 0;
    while (g.c_[i] == 0) ++i;
    if (!mpz_divisible_p(c_[i].get_mpz_t(), g.c_[i].get_mpz_t())) return std::nullopt;
    mpz_class k = c_[i] / g.c_[i];
    if (k == 0 || g.scale(k) != *this) return std::nullopt;
    mpz_class mag = abs(k);
    unsigned j = 0;
    while (mag % p_ == 0) {
        mag /= p_;
        ++j;
    }
    if (mag != 1) return std::nullopt;
    return std::string(k < 0 ? "-" : "") + std::to_string(p_) + "^" + std::to_string(j) + "*" + root;
}

nlohmann::json CycInt::to_json() const {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : c_) {
        if (c.fits_slong_p()) {
            coeffs.push_back(c.get_si());
        } else {
            coeffs.push_back(c.get_str());
        }
    }
    nlohmann::json j{{"coeffs", coeffs}, {"pretty", pretty()}};
    if (auto s = symbolic()) j["symbolic"] = *s;
    return j;
}

CycInt gauss_sum(std::uint32_t p) {
    std::vector<mpz_class> f(p);
    for (std::uint32_t y = 1; y < p; ++y) f[y] = legendre(y, p);
    return CycInt::from_trace_histogram(p, std::span<const mpz_class>(f));
}

std::string to_decimal(const mpz_class& n) { return n.get_str(); }

mpz_class mpz_pow(std::uint64_t base, unsigned exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

}  // namespace apncodes
