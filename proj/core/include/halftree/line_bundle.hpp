#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "halftree/graph.hpp"
#include "halftree/skew_matrix.hpp"

namespace halftree {

/// Nonzero parallel transport per oriented edge, with the reciprocal property
/// psi(i,j) * psi(j,i) = 1.
class Connection {
 public:
  /// Stores the value for (i,j) and its inverse for (j,i); re-setting an
  /// existing pair cross-checks consistency.
  void set(Vertex i, Vertex j, const Rational& value);
  const Rational& at(Vertex i, Vertex j) const;
  bool defined(Vertex i, Vertex j) const;

  const std::map<std::pair<Vertex, Vertex>, Rational>& transports() const { return psi_; }

  static Connection ones(const RootedGraph& g);
  static Connection random(const RootedGraph& g, std::uint64_t seed, int bound);

 private:
  std::map<std::pair<Vertex, Vertex>, Rational> psi_;
};

/// Text format: one line "i j p/q" per oriented edge; the reciprocal
/// direction is auto-completed and cross-checked when both appear.
Connection read_connection(std::istream& is);
void write_connection(std::ostream& os, const Connection& c);

/// Entrywise twist (A^psi)_ij = a_ij psi_ij. Not skew-symmetric in general.
RationalMatrix twist(const SkewMatrix& a, const Connection& c);

/// Cycle-rooted spanning forest on a rootless graph: one out-edge per vertex,
/// every component a tree rooted on a cycle of length >= 3.
struct Crsf {
  int n = 0;
  std::vector<Vertex> out;

  std::vector<std::vector<Vertex>> cycles() const;
  bool cycles_only() const;
  std::string str() const;

  friend bool operator==(const Crsf& a, const Crsf& b) {
    return a.n == b.n && a.out == b.out;
  }
};

/// All CRSFs of the non-root part of g (both orientations of every cycle).
std::vector<Crsf> enumerate_crsf(const RootedGraph& g);

/// Every stripped branch path has even length (no reference matching here).
bool crsf_condition_C(const Crsf& f);

/// Branch product times, per cycle along its out-direction, the edge product
/// times (monodromy - 1/monodromy) for odd cycles and (2 - monodromy -
/// 1/monodromy) for even ones.
Rational crsf_weight(const Crsf& f, const RootedGraph& g, const Connection& c);

/// Determinant of the twisted matrix as a sum over condition-C CRSFs, each
/// unoriented cycle counted once in canonical orientation.
Rational det_via_crsf(const SkewMatrix& a, const Connection& c);

/// Determinant of an even-size skew matrix expanded over covers by even
/// cycles: (-2) times the edge product per cycle of length >= 4, squared
/// entries for doubled edges.
Rational cycle_cover_expansion(const SkewMatrix& a);

}  // namespace halftree
