#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "quiverconn/exact.hpp"
#include "quiverconn/graph.hpp"

namespace qc {

/// Element of the root lattice Z^I, coordinates in canonical node order.
class DimVector {
 public:
  DimVector() = default;
  explicit DimVector(std::size_t n) : c_(n, 0) {}
  DimVector(std::initializer_list<std::int64_t> coords) : c_(coords) {}
  explicit DimVector(std::vector<std::int64_t> coords) : c_(std::move(coords)) {}

  static DimVector unit(std::size_t n, std::size_t i);

  std::size_t size() const { return c_.size(); }
  std::int64_t& operator[](std::size_t i) { return c_[i]; }
  std::int64_t operator[](std::size_t i) const { return c_[i]; }
  const std::vector<std::int64_t>& coords() const { return c_; }

  bool is_zero() const;
  bool is_nonnegative() const;
  bool is_nonpositive() const;
  /// Sum of coordinates.
  std::int64_t height() const;
  /// Componentwise a <= b.
  bool fits_in(const DimVector& bound) const;

  DimVector operator-() const;
  DimVector& operator+=(const DimVector& o);
  DimVector& operator-=(const DimVector& o);
  friend DimVector operator+(DimVector a, const DimVector& b) { return a += b; }
  friend DimVector operator-(DimVector a, const DimVector& b) { return a -= b; }
  friend bool operator==(const DimVector&, const DimVector&) = default;
  friend auto operator<=>(const DimVector&, const DimVector&) = default;

  std::string to_string() const;

 private:
  std::vector<std::int64_t> c_;
};

/// Node-indexed exact complex parameters.
class ParamVector {
 public:
  ParamVector() = default;
  explicit ParamVector(std::size_t n) : c_(n) {}
  explicit ParamVector(std::vector<ExactComplex> coords) : c_(std::move(coords)) {}
  ParamVector(std::initializer_list<ExactComplex> coords) : c_(coords) {}
  /// Integer lattice point viewed as parameters.
  static ParamVector from_lattice(const DimVector& v);

  std::size_t size() const { return c_.size(); }
  ExactComplex& operator[](std::size_t i) { return c_[i]; }
  const ExactComplex& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<ExactComplex>& coords() const { return c_; }

  friend bool operator==(const ParamVector&, const ParamVector&) = default;
  std::string to_string() const;

 private:
  std::vector<ExactComplex> c_;
};

/// The pairing sum_i v_i λ_i; throws InvalidInput on size mismatch.
ExactComplex pairing(const DimVector& v, const ParamVector& lambda);

/// Node indices; a word w = (i1, ..., in) stands for s_i1 ... s_in and acts
/// right to left, so i_n is applied first.
using WeylWord = std::vector<std::size_t>;

enum class RootKind { NotARoot, RealPositive, RealNegative, ImaginaryPositive, ImaginaryNegative };

std::string to_string(RootKind kind);

struct RootClass {
  RootKind kind = RootKind::NotARoot;
  /// Word taking the input to a simple root (real) or to the fundamental
  /// region (imaginary), up to sign. Empty for non-roots.
  WeylWord witness;

  bool is_root() const { return kind != RootKind::NotARoot; }
  bool is_positive() const { return kind == RootKind::RealPositive || kind == RootKind::ImaginaryPositive; }
  bool is_real() const { return kind == RootKind::RealPositive || kind == RootKind::RealNegative; }
};

struct WeylAction {
  DimVector beta;
  ParamVector lambda;
  /// Nodes at which a reflection was applied while λ_i = 0, in application order.
  std::vector<std::size_t> zero_parameter_steps;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// C = 2·Id - A in canonical node order.
IntMatrix cartan_matrix(const Graph& g);

/// Kac-Moody root system of a loop-free graph.
class RootSystem {
 public:
  explicit RootSystem(const Graph& g);

  const Graph& graph() const { return graph_; }
  std::size_t rank() const { return cartan_.size(); }
  const std::vector<NodeId>& nodes() const { return graph_.nodes(); }
  std::size_t index_of(std::string_view node) const { return graph_.index_of(node); }
  const IntMatrix& cartan() const { return cartan_; }

  DimVector simple_root(std::size_t i) const;

  /// (β, γ) = βᵀ C γ.
  std::int64_t form(const DimVector& beta, const DimVector& gamma) const;
  /// (ε_i, β).
  std::int64_t form_with_simple(std::size_t i, const DimVector& beta) const;
  /// Δ(v) = 2 - (v, v).
  std::int64_t delta(const DimVector& v) const;

  DimVector reflect(std::size_t i, DimVector beta) const;
  ParamVector dual_reflect(std::size_t i, ParamVector lambda) const;

  DimVector apply_word(const WeylWord& word, DimVector beta) const;
  WeylAction apply_word(const WeylWord& word, DimVector beta, ParamVector lambda) const;
  /// Parses a whitespace separated list of node ids.
  WeylWord parse_word(const std::string& text) const;

  bool in_fundamental_region(const DimVector& beta) const;
  bool has_connected_support(const DimVector& beta) const;

  RootClass classify(const DimVector& beta) const;

  /// Positive roots β <= bound, ordered by height and then lexicographically.
  std::vector<DimVector> positive_roots_bounded(const DimVector& bound) const;

  /// λ + t for a shift t in the lattice {t : t·d = 0}.
  ParamVector lattice_translation(const DimVector& d, const ParamVector& lambda, const DimVector& shift) const;

 private:
  void check(const DimVector& v) const;
  void check(const ParamVector& v) const;
  void check(std::size_t i) const;

  Graph graph_;
  IntMatrix cartan_;
};

}  // namespace qc
