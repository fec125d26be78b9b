#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncqm {

using cplx = std::complex<double>;

// Deformation parameters and the constants of the realization.
// s = sqrt(1 - xi), xi = theta*eta.
struct AlgebraParams {
  double theta = 0.0;
  double eta = 0.0;
  double epsilon = 0.0;
  double split = 1.0;  // lambda / mu; 1 is the symmetric choice
  double xi = 0.0;
  double lambda = 1.0;
  double mu = 1.0;
  double E = 0.0;
  double F = 0.0;

  double root() const;  // sqrt(1 - xi)
  double c() const;     // theta / (1 + root)
};

// Throws DomainError on xi >= 1, epsilon < 0, split <= 0 or non-finite input.
AlgebraParams derive_constants(double theta, double eta, double epsilon, double split = 1.0);

// Checks the defining relations of an already derived parameter set.
void validate(const AlgebraParams& p);

enum class Tag { Q1, Q2, P1, P2, X1, X2, Xi1, Xi2, R, Identity };

std::string_view to_string(Tag t);
Tag tag_from_string(std::string_view s);  // UnsupportedSymbol on unknown names
bool is_fundamental(Tag t);               // Q1, Q2, P1, P2
bool is_heisenberg(Tag t);                // X1, X2, Xi1, Xi2

// Ordered product of tags; the rightmost factor acts first.  Empty = identity.
struct Term {
  cplx coeff{1.0, 0.0};
  std::vector<Tag> factors;
};

class Symbol {
 public:
  Symbol() = default;
  static Symbol base(Tag t);
  static Symbol identity();
  static Symbol constant(cplx c);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::optional<Tag> as_base() const;

  Symbol& operator+=(const Symbol& o);
  Symbol& operator-=(const Symbol& o);
  Symbol& operator*=(cplx c);

  // Merges equal factor lists, removes explicit Identity factors and zero terms.
  Symbol simplified(double drop_below = 0.0) const;
  std::string str() const;

  friend Symbol operator+(Symbol a, const Symbol& b) { return a += b; }
  friend Symbol operator-(Symbol a, const Symbol& b) { return a -= b; }
  friend Symbol operator*(cplx c, Symbol a) { return a *= c; }
  friend Symbol operator*(Symbol a, cplx c) { return a *= c; }
  friend Symbol operator*(double c, Symbol a) { return a *= cplx(c); }
  friend Symbol operator-(Symbol a) { return a *= cplx(-1.0); }
  friend Symbol operator*(const Symbol& a, const Symbol& b);  // composition a(b(.))

 private:
  std::vector<Term> terms_;
};

// Closure of [S_i, S_j] on the fundamental generators.
Symbol commutator_closure(const AlgebraParams& p, Tag i, Tag j);

// Fundamental generator in Heisenberg-Weyl tags.
Symbol forward_map(const AlgebraParams& p, Tag s);

// Heisenberg-Weyl generator in fundamental tags.  Uses the form in which
// the F-dependent correction is written through Q1 + c P2, so it stays
// finite at epsilon = 0.
Symbol inverse_map(const AlgebraParams& p, Tag s);

// Replaces every R factor by epsilon (Q1 + c P2).
Symbol expand_r(const AlgebraParams& p, const Symbol& s);

// Replaces every fundamental tag (and R) by its forward image.
Symbol to_heisenberg(const AlgebraParams& p, const Symbol& s);

}  // namespace ncqm
