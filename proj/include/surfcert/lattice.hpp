#pragma once

#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfcert/int_types.hpp"
#include "surfcert/matrix.hpp"
#include "surfcert/smith.hpp"

namespace surfcert::lattice {

struct BasisMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A fixed integral basis with its intersection pairing. Classes compare
// bases by object identity: two bases with equal data are still distinct,
// which blocks accidental cross-basis pairing.
class LatticeBasis {
 public:
  LatticeBasis(std::string name, std::vector<std::string> labels, IntMatrix gram)
      : name_(std::move(name)), labels_(std::move(labels)), gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols()) throw std::invalid_argument("gram matrix must be square");
    if (labels_.size() != gram_.rows())
      throw std::invalid_argument("label count must match rank");
    if (!gram_.is_symmetric()) throw std::invalid_argument("gram matrix must be symmetric");
  }

  const std::string& name() const { return name_; }
  std::size_t rank() const { return gram_.rows(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const IntMatrix& gram() const { return gram_; }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  IntMatrix gram_;
};

using BasisPtr = std::shared_ptr<const LatticeBasis>;

inline BasisPtr make_basis(std::string name, std::vector<std::string> labels, IntMatrix gram) {
  return std::make_shared<const LatticeBasis>(std::move(name), std::move(labels),
                                              std::move(gram));
}

// {h, e1..ek} with pairing diag(1, -1, ..., -1).
inline BasisPtr blowup_basis(std::size_t k, const std::string& name = "") {
  std::vector<std::string> labels{"h"};
  std::vector<Int> diag{Int(1)};
  for (std::size_t i = 1; i <= k; ++i) {
    labels.push_back("e" + std::to_string(i));
    diag.emplace_back(-1);
  }
  return make_basis(name.empty() ? "blowup-" + std::to_string(k) : name, std::move(labels),
                    IntMatrix::diagonal(diag));
}

// Rank-1 lattice {h} with h^2 = 1 (classes on the un-blown-up plane).
inline BasisPtr line_basis() {
  return make_basis("plane", {"h"}, IntMatrix::diagonal({Int(1)}));
}

class HomologyClass {
 public:
  HomologyClass(BasisPtr basis, std::vector<Int> coords)
      : basis_(std::move(basis)), coords_(std::move(coords)) {
    if (!basis_) throw std::invalid_argument("null basis");
    if (coords_.size() != basis_->rank())
      throw DimensionError("coordinate length must equal basis rank");
  }

  const BasisPtr& basis() const { return basis_; }
  const std::vector<Int>& coords() const { return coords_; }
  const Int& operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const {
    for (const Int& v : coords_)
      if (v != 0) return false;
    return true;
  }

  HomologyClass operator+(const HomologyClass& o) const {
    require_same_basis(o);
    std::vector<Int> c(coords_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
    return HomologyClass(basis_, std::move(c));
  }
  HomologyClass operator-(const HomologyClass& o) const {
    require_same_basis(o);
    std::vector<Int> c(coords_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
    return HomologyClass(basis_, std::move(c));
  }
  HomologyClass operator-() const {
    std::vector<Int> c(coords_);
    for (Int& v : c) v = -v;
    return HomologyClass(basis_, std::move(c));
  }
  friend HomologyClass operator*(const Int& s, const HomologyClass& a) {
    std::vector<Int> c(a.coords_);
    for (Int& v : c) v *= s;
    return HomologyClass(a.basis_, std::move(c));
  }
  bool operator==(const HomologyClass& o) const {
    return basis_.get() == o.basis_.get() && coords_ == o.coords_;
  }

  void require_same_basis(const HomologyClass& o) const {
    if (basis_.get() != o.basis_.get())
      throw BasisMismatchError("classes live in different bases: '" + basis_->name() +
                               "' vs '" + o.basis_->name() + "'");
  }

 private:
  BasisPtr basis_;
  std::vector<Int> coords_;
};

inline HomologyClass basis_vector(const BasisPtr& basis, std::size_t i) {
  std::vector<Int> c(basis->rank(), Int(0));
  c.at(i) = 1;
  return HomologyClass(basis, std::move(c));
}

inline HomologyClass zero_class(const BasisPtr& basis) {
  return HomologyClass(basis, std::vector<Int>(basis->rank(), Int(0)));
}

// a^T . gram . b; gram matrices here are mostly diagonal, so zero
// entries are skipped before any bignum multiply
inline Int pair(const HomologyClass& a, const HomologyClass& b) {
  a.require_same_basis(b);
  const IntMatrix& g = a.basis()->gram();
  Int acc = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (a[i] == 0) continue;
    Int row = 0;
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const Int& gij = g.at(i, j);
      if (gij == 0 || b[j] == 0) continue;
      row += gij * b[j];
    }
    acc += a[i] * row;
  }
  return acc;
}

inline Int self_intersection(const HomologyClass& a) { return pair(a, a); }

inline IntMatrix gram_of(const std::vector<HomologyClass>& classes) {
  IntMatrix g(classes.size(), classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = 0; j < classes.size(); ++j) g.at(i, j) = pair(classes[i], classes[j]);
  return g;
}

inline IntMatrix coordinate_matrix(const std::vector<HomologyClass>& classes) {
  if (classes.empty()) return IntMatrix(0, 0);
  const std::size_t rank = classes.front().basis()->rank();
  IntMatrix m(classes.size(), rank);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    classes.front().require_same_basis(classes[i]);
    for (std::size_t j = 0; j < rank; ++j) m.at(i, j) = classes[i][j];
  }
  return m;
}

struct BasisCheck {
  bool is_basis;
  Int det;
};

// A set of classes is an integral basis iff its coordinate matrix is
// unimodular.
inline BasisCheck verify_basis(const std::vector<HomologyClass>& classes) {
  if (classes.empty()) throw DimensionError("empty candidate basis");
  const std::size_t rank = classes.front().basis()->rank();
  if (classes.size() != rank)
    throw DimensionError("candidate basis has " + std::to_string(classes.size()) +
                         " classes for rank " + std::to_string(rank));
  Int det = determinant(coordinate_matrix(classes));
  return BasisCheck{det == 1 || det == -1, det};
}

inline bool is_primitive(const HomologyClass& a) {
  if (a.is_zero()) throw std::invalid_argument("primitivity of the zero class is undefined");
  Int g = 0;
  for (const Int& v : a.coords()) g = gcd(g, v);
  return g == 1;
}

// Class of a curve after blowing up: subtract mult_i * e_i for each
// blown-up point it passes through.
inline HomologyClass proper_transform(const HomologyClass& cls, const std::vector<Int>& mults,
                                      const BasisPtr& blowup) {
  if (cls.basis()->rank() != 1)
    throw DimensionError("input class must live in the rank-1 pre-blow-up lattice");
  if (mults.size() + 1 != blowup->rank())
    throw DimensionError("multiplicity count must equal number of exceptional classes");
  std::vector<Int> c;
  c.reserve(blowup->rank());
  c.push_back(cls[0]);
  for (const Int& m : mults) {
    if (m < 0) throw std::invalid_argument("negative multiplicity");
    c.push_back(-m);
  }
  return HomologyClass(blowup, std::move(c));
}

inline nlohmann::ordered_json to_json(const HomologyClass& a) {
  nlohmann::ordered_json coords = nlohmann::ordered_json::array();
  for (const Int& v : a.coords()) coords.push_back(v.str());
  return nlohmann::ordered_json{{"basis", a.basis()->name()}, {"coords", coords}};
}

inline HomologyClass class_from_json(const nlohmann::json& j, const BasisPtr& basis) {
  if (j.at("basis").get<std::string>() != basis->name())
    throw BasisMismatchError("serialized class tagged with basis '" +
                             j.at("basis").get<std::string>() + "', expected '" +
                             basis->name() + "'");
  std::vector<Int> coords;
  for (const auto& v : j.at("coords")) coords.push_back(int_from_string(v.get<std::string>()));
  return HomologyClass(basis, std::move(coords));
}

}  // namespace surfcert::lattice
