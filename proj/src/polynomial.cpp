#include "hypertor/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "hypertor/errors.hpp"

namespace hypertor {

namespace {

using TermMap = std::map<std::vector<unsigned>, mpq_class>;

// Recursive-descent reader over the polynomial grammar:
//   expr    := ['+'|'-'] product (('+'|'-') product)*
//   product := power (['*'] power)*
//   power   := atom ['^' integer]
//   atom    := number ['/' number] | name | '(' expr ')'
class TextReader {
 public:
  TextReader(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  TermMap readAll() {
    TermMap result = expr();
    skipSpace();
    if (pos_ < text_.size()) fail("unexpected character", std::string(1, text_[pos_]));
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message, const std::string& token, bool unknown = false) const {
    throw PolynomialParseError{pos_, message, token, unknown};
  }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skipSpace();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool startsAtom() {
    skipSpace();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
           c == '(';
  }

  TermMap constant(const mpq_class& c) const {
    TermMap t;
    if (sgn(c) != 0) t[std::vector<unsigned>(vars_.size(), 0)] = c;
    return t;
  }

  static void accumulate(TermMap& into, const TermMap& from, int sign) {
    for (const auto& [e, c] : from) {
      mpq_class& slot = into[e];
      if (sign > 0) slot += c; else slot -= c;
      if (sgn(slot) == 0) into.erase(e);
    }
  }

  static TermMap multiply(const TermMap& a, const TermMap& b) {
    TermMap out;
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) {
        std::vector<unsigned> e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        mpq_class& slot = out[e];
        slot += ca * cb;
        if (sgn(slot) == 0) out.erase(e);
      }
    return out;
  }

  TermMap expr() {
    TermMap acc;
    int sign = 1;
    if (peek('+')) ++pos_;
    else if (peek('-')) { ++pos_; sign = -1; }
    accumulate(acc, product(), sign);
    while (true) {
      if (peek('+')) { ++pos_; sign = 1; }
      else if (peek('-')) { ++pos_; sign = -1; }
      else break;
      accumulate(acc, product(), sign);
    }
    return acc;
  }

  TermMap product() {
    TermMap acc = power();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = multiply(acc, power());
      } else if (startsAtom()) {
        acc = multiply(acc, power());
      } else {
        break;
      }
    }
    return acc;
  }

  unsigned long readInteger() {
    skipSpace();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer", pos_ < text_.size() ? std::string(1, text_[pos_]) : "end of input");
    std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 9) {
      pos_ = start;
      fail("exponent too large", digits);
    }
    return std::stoul(digits);
  }

  TermMap power() {
    TermMap base = atom();
    if (peek('^')) {
      ++pos_;
      unsigned long e = readInteger();
      if (e > 4096) fail("exponent too large", std::to_string(e));
      TermMap result = constant(1);
      for (unsigned long i = 0; i < e; ++i) result = multiply(result, base);
      return result;
    }
    return base;
  }

  TermMap atom() {
    skipSpace();
    if (pos_ >= text_.size()) fail("unexpected end of polynomial", "end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      TermMap inner = expr();
      if (!peek(')')) fail("expected ')'", pos_ < text_.size() ? std::string(1, text_[pos_]) : "end of input");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      mpz_class num(std::string(text_.substr(start, pos_ - start)));
      mpz_class den = 1;
      std::size_t save = pos_;
      skipSpace();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skipSpace();
        std::size_t dstart = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (dstart == pos_) fail("expected a denominator", "/");
        den = mpz_class(std::string(text_.substr(dstart, pos_ - dstart)));
        if (den == 0) {
          pos_ = dstart;
          fail("zero denominator", "0");
        }
      } else {
        pos_ = save;
      }
      mpq_class q(num, den);
      q.canonicalize();
      return constant(q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'", name, true);
      }
      std::vector<unsigned> e(vars_.size(), 0);
      e[static_cast<std::size_t>(it - vars_.begin())] = 1;
      TermMap t;
      t[e] = 1;
      return t;
    }
    fail("unexpected character", std::string(1, c));
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

std::string monomialText(const std::vector<unsigned>& e, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out;
}

// Joins (signed coefficient text, monomial text) pairs into "a*x - b*y".
std::string joinTerms(const std::vector<std::pair<std::string, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    std::string coeff = terms[k].first;
    const std::string& mono = terms[k].second;
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (k == 0) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    if (mono.empty()) out += coeff;
    else if (coeff == "1") out += mono;
    else out += coeff + "*" + mono;
  }
  return out;
}

}  // namespace

std::vector<RationalTerm> parsePolynomialText(std::string_view text, const std::vector<std::string>& variables) {
  TextReader reader(text, variables);
  TermMap map = reader.readAll();
  std::vector<RationalTerm> terms;
  terms.reserve(map.size());
  for (auto it = map.rbegin(); it != map.rend(); ++it) terms.push_back({it->second, it->first});
  return terms;
}

std::string formatRationalTerms(const std::vector<RationalTerm>& terms, const std::vector<std::string>& variables) {
  std::vector<std::pair<std::string, std::string>> parts;
  for (const auto& t : terms) parts.emplace_back(t.coeff.get_str(), monomialText(t.exponents, variables));
  return joinTerms(parts);
}

// ---------------------------------------------------------------- PolyRing

template <class K>
PolyRing<K>::PolyRing(K field, std::vector<std::string> names, std::vector<int> weights, TermOrder order)
    : field_(std::move(field)), names_(std::move(names)), weights_(std::move(weights)), order_(order) {
  if (names_.size() > kMaxVariables) throw Error(ErrorKind::InvalidArgument, "at most 16 variables are supported");
  if (weights_.empty()) weights_.assign(names_.size(), 1);
  if (weights_.size() != names_.size())
    throw Error(ErrorKind::InvalidArgument, "weight count does not match variable count");
  for (int w : weights_)
    if (w <= 0) throw Error(ErrorKind::InvalidArgument, "grading weights must be positive");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw Error(ErrorKind::InvalidArgument, "duplicate variable '" + names_[i] + "'");
}

template <class K>
bool PolyRing<K>::hasUnitWeights() const noexcept {
  return std::all_of(weights_.begin(), weights_.end(), [](int w) { return w == 1; });
}

template <class K>
Monomial PolyRing<K>::monomial(std::span<const unsigned> exponents) const {
  if (exponents.size() != numVars()) throw Error(ErrorKind::InvalidArgument, "exponent vector has wrong length");
  return Monomial::fromExponents(exponents, weights_);
}

template <class K>
Monomial PolyRing<K>::variable(std::size_t i) const {
  std::vector<unsigned> e(numVars(), 0);
  e.at(i) = 1;
  return monomial(e);
}

template <class K>
std::optional<std::size_t> PolyRing<K>::indexOf(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

template <class K>
std::string PolyRing<K>::formatMonomial(const Monomial& m) const {
  return monomialText(m.exponents(numVars()), names_);
}

template <class K>
std::string PolyRing<K>::describe() const {
  std::string out = field_.name() + "[";
  for (std::size_t i = 0; i < names_.size(); ++i) out += (i ? "," : "") + names_[i];
  if (!hasUnitWeights()) {
    out += " : ";
    for (std::size_t i = 0; i < weights_.size(); ++i) out += (i ? "," : "") + std::to_string(weights_[i]);
  }
  return out + "]";
}

template <class K>
bool PolyRing<K>::sameAs(const PolyRing& other) const {
  return this == &other ||
         (field_ == other.field_ && names_ == other.names_ && weights_ == other.weights_ && order_ == other.order_);
}

// -------------------------------------------------------------- Polynomial

template <class K>
Polynomial<K>::Polynomial(PolyRingPtr<K> ring, std::vector<Term> terms) : ring_(std::move(ring)) {
  const PolyRing<K>& R = *ring_;
  const K& F = R.field();
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return R.compare(a.mono, b.mono) > 0; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coeff = F.add(terms_.back().coeff, t.coeff);
      if (F.isZero(terms_.back().coeff)) terms_.pop_back();
    } else if (!F.isZero(t.coeff)) {
      terms_.push_back(std::move(t));
    }
  }
}

template <class K>
Polynomial<K> Polynomial<K>::constant(PolyRingPtr<K> ring, const Element& c) {
  Polynomial p(ring);
  if (!ring->field().isZero(c)) p.terms_.push_back({c, Monomial()});
  return p;
}

template <class K>
Polynomial<K> Polynomial<K>::integer(PolyRingPtr<K> ring, long n) {
  auto c = ring->field().fromInteger(n);
  return constant(std::move(ring), c);
}

template <class K>
Polynomial<K> Polynomial<K>::variable(PolyRingPtr<K> ring, std::size_t i) {
  Monomial m = ring->variable(i);
  return monomial(ring, ring->field().one(), m);
}

template <class K>
Polynomial<K> Polynomial<K>::monomial(PolyRingPtr<K> ring, const Element& c, const Monomial& m) {
  Polynomial p(std::move(ring));
  if (!p.ring_->field().isZero(c)) p.terms_.push_back({c, m});
  return p;
}

template <class K>
Polynomial<K> Polynomial<K>::fromRationalTerms(PolyRingPtr<K> ring, const std::vector<RationalTerm>& terms) {
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back({ring->field().fromRational(t.coeff), ring->monomial(t.exponents)});
  return Polynomial(std::move(ring), std::move(out));
}

template <class K>
Polynomial<K> Polynomial<K>::parse(PolyRingPtr<K> ring, std::string_view text) {
  try {
    return fromRationalTerms(ring, parsePolynomialText(text, ring->names()));
  } catch (const PolynomialParseError& e) {
    throw Error(ErrorKind::SyntaxError, e.message + " at offset " + std::to_string(e.offset));
  }
}

template <class K>
bool Polynomial<K>::isHomogeneous() const noexcept {
  for (const auto& t : terms_)
    if (t.mono.degree() != terms_.front().mono.degree()) return false;
  return true;
}

template <class K>
std::optional<int> Polynomial<K>::homogeneousDegree() const noexcept {
  if (terms_.empty() || !isHomogeneous()) return std::nullopt;
  return terms_.front().mono.degree();
}

template <class K>
int Polynomial<K>::maxDegree() const noexcept {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

template <class K>
void Polynomial<K>::checkSameRing(const Polynomial& other) const {
  if (ring_ != other.ring_ && !ring_->sameAs(*other.ring_))
    throw Error(ErrorKind::RingMismatch, "polynomials belong to different rings");
}

template <class K>
Polynomial<K> Polynomial<K>::operator+(const Polynomial& other) const {
  checkSameRing(other);
  const PolyRing<K>& R = *ring_;
  const K& F = R.field();
  Polynomial out(ring_);
  out.terms_.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < other.terms_.size()) {
    int c = R.compare(terms_[i].mono, other.terms_[j].mono);
    if (c > 0) out.terms_.push_back(terms_[i++]);
    else if (c < 0) out.terms_.push_back(other.terms_[j++]);
    else {
      auto s = F.add(terms_[i].coeff, other.terms_[j].coeff);
      if (!F.isZero(s)) out.terms_.push_back({s, terms_[i].mono});
      ++i, ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.terms_.push_back(terms_[i]);
  for (; j < other.terms_.size(); ++j) out.terms_.push_back(other.terms_[j]);
  return out;
}

template <class K>
Polynomial<K> Polynomial<K>::operator-() const {
  Polynomial out(*this);
  for (auto& t : out.terms_) t.coeff = ring_->field().neg(t.coeff);
  return out;
}

template <class K>
Polynomial<K> Polynomial<K>::operator-(const Polynomial& other) const {
  return *this + (-other);
}

template <class K>
Polynomial<K> Polynomial<K>::operator*(const Polynomial& other) const {
  checkSameRing(other);
  if (terms_.empty() || other.terms_.empty()) return Polynomial(ring_);
  const K& F = ring_->field();
  std::vector<Term> prod;
  prod.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : other.terms_) prod.push_back({F.mul(a.coeff, b.coeff), a.mono * b.mono});
  return Polynomial(ring_, std::move(prod));
}

template <class K>
Polynomial<K> Polynomial<K>::scaled(const Element& c) const {
  const K& F = ring_->field();
  if (F.isZero(c)) return Polynomial(ring_);
  Polynomial out(*this);
  for (auto& t : out.terms_) t.coeff = F.mul(t.coeff, c);
  return out;
}

template <class K>
Polynomial<K> Polynomial<K>::mulTerm(const Element& c, const Monomial& m) const {
  const K& F = ring_->field();
  if (F.isZero(c)) return Polynomial(ring_);
  Polynomial out(*this);
  // Multiplying by a monomial preserves the order of a monomial order.
  for (auto& t : out.terms_) {
    t.coeff = F.mul(t.coeff, c);
    t.mono = t.mono * m;
  }
  return out;
}

template <class K>
Polynomial<K> Polynomial<K>::pow(unsigned e) const {
  Polynomial result = integer(ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

template <class K>
Polynomial<K> Polynomial<K>::derivative(std::size_t var) const {
  if (var >= ring_->numVars()) throw Error(ErrorKind::InvalidArgument, "derivative variable out of range");
  const K& F = ring_->field();
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.mono[var];
    if (e == 0) continue;
    auto c = F.mul(t.coeff, F.fromInteger(e));
    if (F.isZero(c)) continue;
    std::vector<unsigned> ex = t.mono.exponents(ring_->numVars());
    --ex[var];
    out.push_back({c, ring_->monomial(ex)});
  }
  return Polynomial(ring_, std::move(out));
}

template <class K>
Polynomial<K> Polynomial<K>::frobenius(unsigned q) const {
  const K& F = ring_->field();
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({F.pow(t.coeff, q), t.mono.power(q)});
  return Polynomial(ring_, std::move(out));
}

template <class K>
std::optional<Polynomial<K>> Polynomial<K>::divideExact(const Polynomial& divisor) const {
  checkSameRing(divisor);
  if (divisor.isZero()) throw Error(ErrorKind::DivisionByZero, "division by the zero polynomial");
  const K& F = ring_->field();
  const Term& lead = divisor.leadTerm();
  Polynomial rest = *this;
  std::vector<Term> quotient;
  while (!rest.isZero()) {
    const Term& t = rest.leadTerm();
    if (!lead.mono.divides(t.mono)) return std::nullopt;
    Term q{F.div(t.coeff, lead.coeff), t.mono.quotient(lead.mono)};
    rest = rest - divisor.mulTerm(q.coeff, q.mono);
    quotient.push_back(q);
  }
  return Polynomial(ring_, std::move(quotient));
}

template <class K>
Polynomial<K> Polynomial<K>::remainder(const Polynomial& divisor) const {
  checkSameRing(divisor);
  if (divisor.isZero()) return *this;
  const K& F = ring_->field();
  const Term& lead = divisor.leadTerm();
  Polynomial rest = *this;
  std::vector<Term> rem;
  while (!rest.isZero()) {
    const Term& t = rest.leadTerm();
    if (lead.mono.divides(t.mono)) {
      rest = rest - divisor.mulTerm(F.div(t.coeff, lead.coeff), t.mono.quotient(lead.mono));
    } else {
      rem.push_back(t);
      rest.terms_.erase(rest.terms_.begin());
    }
  }
  return Polynomial(ring_, std::move(rem));
}

template <class K>
Polynomial<K> Polynomial<K>::monic() const {
  if (terms_.empty()) return *this;
  return scaled(ring_->field().inv(terms_.front().coeff));
}

template <class K>
std::string Polynomial<K>::toString() const {
  std::vector<std::pair<std::string, std::string>> parts;
  for (const auto& t : terms_)
    parts.emplace_back(ring_->field().toString(t.coeff), ring_->formatMonomial(t.mono));
  return joinTerms(parts);
}

template class PolyRing<PrimeField>;
template class PolyRing<RationalField>;
template class Polynomial<PrimeField>;
template class Polynomial<RationalField>;

}  // namespace hypertor
