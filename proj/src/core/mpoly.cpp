#include "mpoly.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"

namespace jointkit {

unsigned total_degree(const Exponents& a) {
  unsigned s = 0;
  for (unsigned e : a) s += e;
  return s;
}

bool GrLexLess::operator()(const Exponents& a, const Exponents& b) const {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {
void compositions_rec(unsigned total, std::size_t parts, Exponents& prefix,
                      std::vector<Exponents>& out) {
  if (parts == 1) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (unsigned c = 0; c <= total; ++c) {
    prefix.push_back(c);
    compositions_rec(total - c, parts - 1, prefix, out);
    prefix.pop_back();
  }
}
}  // namespace

std::vector<Exponents> exponents_of_degree(unsigned total, std::size_t parts) {
  std::vector<Exponents> out;
  if (parts == 0) {
    if (total == 0) out.push_back({});
    return out;
  }
  Exponents prefix;
  compositions_rec(total, parts, prefix, out);
  return out;
}

std::vector<Exponents> exponents_up_to_degree(unsigned max_total, std::size_t parts) {
  std::vector<Exponents> out;
  for (unsigned d = 0; d <= max_total; ++d) {
    auto layer = exponents_of_degree(d, parts);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

mpz_class binom_mpz(const Exponents& c, const Exponents& a) {
  mpz_class prod = 1;
  mpz_class b;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (a[i] > c[i]) return 0;
    mpz_bin_uiui(b.get_mpz_t(), c[i], a[i]);
    prod *= b;
  }
  return prod;
}

MultiPoly::MultiPoly(std::size_t nvars, const Field& f) : nvars_(nvars), field_(f) {}

MultiPoly MultiPoly::constant(std::size_t nvars, const Value& c) {
  MultiPoly p(nvars, c.field());
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index, const Field& f) {
  if (index >= nvars) fail(errc::invalid_argument, "variable index out of range");
  Exponents a(nvars, 0);
  a[index] = 1;
  MultiPoly p(nvars, f);
  p.add_term(a, f.one());
  return p;
}

MultiPoly MultiPoly::monomial(Exponents a, const Value& c) {
  MultiPoly p(a.size(), c.field());
  p.add_term(a, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

std::optional<unsigned> MultiPoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  return total_degree(terms_.rbegin()->first);  // grlex: last term has maximal degree
}

std::optional<unsigned> MultiPoly::min_total_degree() const {
  if (terms_.empty()) return std::nullopt;
  return total_degree(terms_.begin()->first);
}

Value MultiPoly::coefficient(const Exponents& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? field_.zero() : it->second;
}

void MultiPoly::add_term(const Exponents& a, const Value& c) {
  if (a.size() != nvars_) fail(errc::invalid_argument, "exponent vector length mismatch");
  if (c.field() != field_) fail(errc::invalid_argument, "coefficient field mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (nvars_ != o.nvars_)
    fail(errc::invalid_argument, "polynomials with different variable counts");
  if (field_ != o.field_) fail(errc::invalid_argument, "polynomials over different fields");
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r(*this);
  for (const auto& [a, c] : o.terms_) r.add_term(a, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r(*this);
  for (const auto& [a, c] : o.terms_) r.add_term(a, -c);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(nvars_, field_);
  for (const auto& [a, c] : terms_) r.terms_.emplace(a, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r(nvars_, field_);
  Exponents sum(nvars_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) sum[i] = a[i] + b[i];
      r.add_term(sum, ca * cb);
    }
  return r;
}

MultiPoly MultiPoly::scaled(const Value& c) const {
  if (c.field() != field_) fail(errc::invalid_argument, "scalar field mismatch");
  MultiPoly r(nvars_, field_);
  if (c.is_zero()) return r;
  for (const auto& [a, coeff] : terms_) r.terms_.emplace(a, coeff * c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(nvars_, field_.one());
  MultiPoly base(*this);
  while (e) {
    if (e & 1) r = r * base;
    if (e >>= 1) base = base * base;
  }
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  return nvars_ == o.nvars_ && field_ == o.field_ && terms_ == o.terms_;
}

Value MultiPoly::evaluate(const Vec& x) const {
  if (x.size() != nvars_) fail(errc::invalid_argument, "evaluation point dimension mismatch");
  require_field(field_, x, "evaluation point");
  // power tables per variable
  std::vector<unsigned> max_exp(nvars_, 0);
  for (const auto& [a, c] : terms_)
    for (std::size_t i = 0; i < nvars_; ++i) max_exp[i] = std::max(max_exp[i], a[i]);
  std::vector<Vec> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    powers[i].reserve(max_exp[i] + 1);
    powers[i].push_back(field_.one());
    for (unsigned e = 1; e <= max_exp[i]; ++e) powers[i].push_back(powers[i].back() * x[i]);
  }
  Value acc = field_.zero();
  for (const auto& [a, c] : terms_) {
    Value t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (a[i]) t *= powers[i][a[i]];
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::hasse_derivative(const Exponents& a) const {
  if (a.size() != nvars_) fail(errc::invalid_argument, "derivative index length mismatch");
  MultiPoly r(nvars_, field_);
  Exponents shifted(nvars_);
  for (const auto& [c, coeff] : terms_) {
    bool ok = true;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (c[i] < a[i]) {
        ok = false;
        break;
      }
      shifted[i] = c[i] - a[i];
    }
    if (!ok) continue;
    Value factor = field_.from_mpz(binom_mpz(c, a));
    if (!factor.is_zero()) r.add_term(shifted, coeff * factor);
  }
  return r;
}

MultiPoly MultiPoly::compose_affine(const Mat& m, const Vec& b) const {
  if (m.rows() != nvars_ || b.size() != nvars_)
    fail(errc::invalid_argument, "compose_affine shape mismatch");
  if (m.field() != field_) fail(errc::invalid_argument, "compose_affine field mismatch");
  require_field(field_, b, "translation");
  std::size_t out_vars = m.cols();
  // linear substitutes l_i(t) = b_i + sum_j M_ij t_j
  std::vector<MultiPoly> subs;
  subs.reserve(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    MultiPoly li(out_vars, field_);
    li.add_term(Exponents(out_vars, 0), b[i]);
    for (std::size_t j = 0; j < out_vars; ++j) {
      Exponents a(out_vars, 0);
      a[j] = 1;
      li.add_term(a, m.at(i, j));
    }
    subs.push_back(std::move(li));
  }
  std::vector<unsigned> max_exp(nvars_, 0);
  for (const auto& [a, c] : terms_)
    for (std::size_t i = 0; i < nvars_; ++i) max_exp[i] = std::max(max_exp[i], a[i]);
  std::vector<std::vector<MultiPoly>> pow_cache(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    pow_cache[i].push_back(MultiPoly::constant(out_vars, field_.one()));
    for (unsigned e = 1; e <= max_exp[i]; ++e)
      pow_cache[i].push_back(pow_cache[i].back() * subs[i]);
  }
  MultiPoly r(out_vars, field_);
  for (const auto& [a, c] : terms_) {
    MultiPoly t = MultiPoly::constant(out_vars, c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (a[i]) t = t * pow_cache[i][a[i]];
    r = r + t;
  }
  return r;
}

MultiPoly MultiPoly::taylor_shift(const Vec& x0) const {
  return compose_affine(Mat::identity(nvars_, field_), x0);
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << it->second.str();
    bool any_var = false;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (it->first[i]) {
        os << (any_var ? " " : " * ") << "x" << (i + 1) << "^" << it->first[i];
        any_var = true;
      }
  }
  return os.str();
}

namespace {
// one term: "coeff" or "coeff * x1^2 x3" or "x1^2" (unit coefficient)
void parse_term(const std::string& term, std::size_t nvars, const Field& f, MultiPoly& acc) {
  std::istringstream is(term);
  std::string tok;
  Value coeff = f.one();
  Exponents a(nvars, 0);
  bool saw_any = false, saw_coeff = false;
  while (is >> tok) {
    if (tok == "*") continue;
    saw_any = true;
    if (tok[0] == 'x') {
      auto caret = tok.find('^');
      std::string idx_s = caret == std::string::npos ? tok.substr(1) : tok.substr(1, caret - 1);
      unsigned exp = 1;
      std::size_t idx = 0;
      try {
        idx = std::stoul(idx_s);
        if (caret != std::string::npos) exp = static_cast<unsigned>(std::stoul(tok.substr(caret + 1)));
      } catch (...) {
        fail(errc::parse_error, "bad monomial token: " + tok);
      }
      if (idx < 1 || idx > nvars) fail(errc::parse_error, "variable index out of range: " + tok);
      a[idx - 1] += exp;
    } else {
      if (saw_coeff) fail(errc::parse_error, "two coefficients in one term: " + term);
      coeff = f.from_string(tok);
      saw_coeff = true;
    }
  }
  if (!saw_any) fail(errc::parse_error, "empty term");
  acc.add_term(a, coeff);
}
}  // namespace

MultiPoly MultiPoly::parse(const std::string& text, std::size_t nvars, const Field& f) {
  MultiPoly acc(nvars, f);
  std::string trimmed;
  for (char ch : text)
    if (ch != '\n' && ch != '\r') trimmed += ch;
  if (trimmed.find_first_not_of(" \t") == std::string::npos)
    fail(errc::parse_error, "empty polynomial text");
  std::size_t start = 0;
  while (start <= trimmed.size()) {
    std::size_t plus = trimmed.find(" + ", start);
    std::string term =
        plus == std::string::npos ? trimmed.substr(start) : trimmed.substr(start, plus - start);
    if (term.find_first_not_of(" \t") != std::string::npos) {
      if (term != "0") parse_term(term, nvars, f, acc);
    }
    if (plus == std::string::npos) break;
    start = plus + 3;
  }
  return acc;
}

}  // namespace jointkit
