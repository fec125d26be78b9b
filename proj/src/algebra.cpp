#include "ncqm/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ncqm/error.hpp"

namespace ncqm {

namespace {
constexpr const char* kModule = "algebra";
}

double AlgebraParams::root() const { return std::sqrt(1.0 - xi); }
double AlgebraParams::c() const { return theta / (1.0 + root()); }

AlgebraParams derive_constants(double theta, double eta, double epsilon, double split) {
  if (!std::isfinite(theta) || !std::isfinite(eta) || !std::isfinite(epsilon) || !std::isfinite(split))
    throw DomainError(kModule, "non-finite parameter");
  if (epsilon < 0.0) throw DomainError(kModule, "epsilon must be non-negative");
  if (split <= 0.0) throw DomainError(kModule, "split must be positive");
  AlgebraParams p;
  p.theta = theta;
  p.eta = eta;
  p.epsilon = epsilon;
  p.split = split;
  p.xi = theta * eta;
  if (!(p.xi < 1.0)) throw DomainError(kModule, "theta*eta must be < 1");
  const double s = std::sqrt(1.0 - p.xi);
  p.lambda = std::sqrt(split * (1.0 + s) / 2.0);
  p.mu = std::sqrt((1.0 + s) / (2.0 * split));
  p.F = -(p.lambda / p.mu) * epsilon * s * (1.0 + s);
  p.E = -theta * p.F / (1.0 + s);
  return p;
}

void validate(const AlgebraParams& p) {
  const double s = p.root();
  const double tol = 1e-12;
  if (!(p.xi < 1.0) || std::abs(p.xi - p.theta * p.eta) > tol)
    throw DomainError(kModule, "xi inconsistent");
  if (p.epsilon < 0.0) throw DomainError(kModule, "epsilon must be non-negative");
  if (std::abs(p.lambda * p.mu - (1.0 + s) / 2.0) > tol)
    throw DomainError(kModule, "lambda*mu != (1+s)/2");
  if (std::abs(p.F + (p.lambda / p.mu) * p.epsilon * s * (1.0 + s)) > tol * (1.0 + std::abs(p.F)))
    throw DomainError(kModule, "F inconsistent");
  if (std::abs(p.E + p.theta * p.F / (1.0 + s)) > tol * (1.0 + std::abs(p.E)))
    throw DomainError(kModule, "E inconsistent");
}

std::string_view to_string(Tag t) {
  switch (t) {
    case Tag::Q1: return "Q1";
    case Tag::Q2: return "Q2";
    case Tag::P1: return "P1";
    case Tag::P2: return "P2";
    case Tag::X1: return "X1";
    case Tag::X2: return "X2";
    case Tag::Xi1: return "Xi1";
    case Tag::Xi2: return "Xi2";
    case Tag::R: return "R";
    case Tag::Identity: return "I";
  }
  return "?";
}

Tag tag_from_string(std::string_view s) {
  std::string u(s);
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char ch) { return std::toupper(ch); });
  static const std::map<std::string, Tag> table = {
      {"Q1", Tag::Q1}, {"Q2", Tag::Q2}, {"P1", Tag::P1},   {"P2", Tag::P2},   {"X1", Tag::X1},
      {"X2", Tag::X2}, {"XI1", Tag::Xi1}, {"XI2", Tag::Xi2}, {"R", Tag::R}, {"I", Tag::Identity}};
  auto it = table.find(u);
  if (it == table.end()) throw UnsupportedSymbol(kModule, "unknown symbol '" + std::string(s) + "'");
  return it->second;
}

bool is_fundamental(Tag t) { return t == Tag::Q1 || t == Tag::Q2 || t == Tag::P1 || t == Tag::P2; }
bool is_heisenberg(Tag t) { return t == Tag::X1 || t == Tag::X2 || t == Tag::Xi1 || t == Tag::Xi2; }

Symbol Symbol::base(Tag t) {
  Symbol s;
  if (t == Tag::Identity)
    s.terms_.push_back({1.0, {}});
  else
    s.terms_.push_back({1.0, {t}});
  return s;
}

Symbol Symbol::identity() { return base(Tag::Identity); }

Symbol Symbol::constant(cplx c) {
  Symbol s;
  if (c != 0.0) s.terms_.push_back({c, {}});
  return s;
}

std::optional<Tag> Symbol::as_base() const {
  if (terms_.size() == 1 && terms_[0].coeff == 1.0 && terms_[0].factors.size() == 1) return terms_[0].factors[0];
  return std::nullopt;
}

Symbol& Symbol::operator+=(const Symbol& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

Symbol& Symbol::operator-=(const Symbol& o) {
  for (auto t : o.terms_) {
    t.coeff = -t.coeff;
    terms_.push_back(std::move(t));
  }
  return *this;
}

Symbol& Symbol::operator*=(cplx c) {
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Symbol operator*(const Symbol& a, const Symbol& b) {
  Symbol out;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      Term t;
      t.coeff = ta.coeff * tb.coeff;
      t.factors = ta.factors;
      t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
      out.terms_.push_back(std::move(t));
    }
  return out;
}

Symbol Symbol::simplified(double drop_below) const {
  std::map<std::vector<Tag>, cplx> acc;
  std::vector<std::vector<Tag>> order;
  for (const auto& t : terms_) {
    std::vector<Tag> f;
    for (Tag g : t.factors)
      if (g != Tag::Identity) f.push_back(g);
    auto [it, inserted] = acc.try_emplace(f, 0.0);
    if (inserted) order.push_back(f);
    it->second += t.coeff;
  }
  Symbol out;
  for (const auto& f : order) {
    cplx c = acc[f];
    if (std::abs(c) > drop_below) out.terms_.push_back({c, f});
  }
  return out;
}

std::string Symbol::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coeff.real() << (t.coeff.imag() < 0 ? "-" : "+") << std::abs(t.coeff.imag()) << "i)";
    for (Tag g : t.factors) os << "*" << to_string(g);
  }
  return os.str();
}

namespace {

int order_index(Tag t) {
  switch (t) {
    case Tag::Q1: return 0;
    case Tag::Q2: return 1;
    case Tag::P1: return 2;
    case Tag::P2: return 3;
    default: return -1;
  }
}

// Closure for i before j in the order Q1, Q2, P1, P2.
Symbol ordered_closure(const AlgebraParams& p, Tag i, Tag j) {
  const cplx I(0.0, 1.0);
  const double s = p.root();
  const Symbol id = Symbol::identity();
  const Symbol r = Symbol::base(Tag::R);
  if (i == Tag::Q1 && j == Tag::Q2) return I * p.theta * (id + p.theta * r);
  if (i == Tag::P1 && j == Tag::P2) return I * (p.eta * id + (1.0 + s) * (1.0 + s) * r);
  if ((i == Tag::Q1 && j == Tag::P1) || (i == Tag::Q2 && j == Tag::P2)) return I * (id + p.theta * (1.0 + s) * r);
  return Symbol();
}

}  // namespace

Symbol commutator_closure(const AlgebraParams& p, Tag i, Tag j) {
  if (!is_fundamental(i) || !is_fundamental(j))
    throw UnsupportedSymbol(kModule, "closure is defined on Q1, Q2, P1, P2 only");
  if (i == j) return Symbol();
  if (order_index(i) < order_index(j)) return ordered_closure(p, i, j);
  return -ordered_closure(p, j, i);
}

Symbol forward_map(const AlgebraParams& p, Tag s) {
  const Symbol X1 = Symbol::base(Tag::X1), X2 = Symbol::base(Tag::X2);
  const Symbol K1 = Symbol::base(Tag::Xi1), K2 = Symbol::base(Tag::Xi2);
  const double a = p.theta / (2.0 * p.lambda);
  const double b = p.eta / (2.0 * p.mu);
  switch (s) {
    case Tag::Q1: return p.lambda * X1 - a * K2 + p.E * (X1 * X1);
    case Tag::Q2: return p.lambda * X2 + a * K1;
    case Tag::P1: return p.mu * K1 + b * X2;
    case Tag::P2: return p.mu * K2 - b * X1 + p.F * (X1 * X1);
    default: break;
  }
  throw UnsupportedSymbol(kModule, "forward_map takes Q1, Q2, P1 or P2");
}

Symbol inverse_map(const AlgebraParams& p, Tag s) {
  const Symbol Q1 = Symbol::base(Tag::Q1), Q2 = Symbol::base(Tag::Q2);
  const Symbol P1 = Symbol::base(Tag::P1), P2 = Symbol::base(Tag::P2);
  const double r = p.root();
  const double a = p.theta / (2.0 * p.lambda);
  const double b = p.eta / (2.0 * p.mu);
  switch (s) {
    case Tag::X1: return (1.0 / r) * (p.mu * Q1 + a * P2);
    case Tag::X2: return (1.0 / r) * (p.mu * Q2 - a * P1);
    case Tag::Xi1: return (1.0 / r) * (p.lambda * P1 - b * Q2);
    case Tag::Xi2: {
      const Symbol w = Q1 + p.c() * P2;  // equals (s/mu) X1
      return (1.0 / r) * (p.lambda * P2 + b * Q1 - (p.F * p.mu / r) * (w * w));
    }
    default: break;
  }
  throw UnsupportedSymbol(kModule, "inverse_map takes X1, X2, Xi1 or Xi2");
}

namespace {

template <class Fn>
Symbol substitute(const Symbol& s, Fn&& image) {
  Symbol out;
  for (const auto& t : s.terms()) {
    Symbol prod = Symbol::constant(t.coeff);
    for (Tag g : t.factors) prod = prod * image(g);
    out += prod;
  }
  return out;
}

}  // namespace

Symbol expand_r(const AlgebraParams& p, const Symbol& s) {
  const Symbol rimg = p.epsilon * (Symbol::base(Tag::Q1) + p.c() * Symbol::base(Tag::P2));
  return substitute(s, [&](Tag g) { return g == Tag::R ? rimg : Symbol::base(g); });
}

Symbol to_heisenberg(const AlgebraParams& p, const Symbol& s) {
  const Symbol expanded = expand_r(p, s);
  return substitute(expanded, [&](Tag g) { return is_fundamental(g) ? forward_map(p, g) : Symbol::base(g); });
}

}  // namespace ncqm
