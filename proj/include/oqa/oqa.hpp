#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oqa/algebra.hpp"

namespace oqa {

struct Structure {
  std::string name;
  AlgebraSpec algebra;
  TensorSquareElement rho;
  TensorSquareElement rho_inv;
  AlgebraMap t_d;
  AlgebraMap t_u;
  std::optional<AlgebraElement> twist;
  std::optional<AlgebraElement> twist_inv;
  RootReducer roots;  // formal square roots appearing in t_d, t_u

  Scalar reduce(const Scalar& s) const { return roots.reduce(s); }
  TensorSquareElement reduce(const TensorSquareElement& u) const;
  AlgebraElement reduce(const AlgebraElement& x) const;
};

struct AxiomFailure {
  std::string axiom;   // "qa1", "qa2", "qa3"
  std::string detail;  // human-readable slot description
};

struct AxiomReport {
  bool qa1 = true;
  bool qa2 = true;
  bool qa3 = true;
  std::vector<AxiomFailure> witnesses;
  bool ok() const { return qa1 && qa2 && qa3; }
};

// With full_report every failing check contributes a witness; otherwise only
// the first witness per axiom is kept.
AxiomReport check_axioms(const Structure& s, bool full_report = false);

// rho_{a,B,C}: B holds b_{il} for 1 <= i < l <= n.
using PairTable = std::map<std::pair<int, int>, Scalar>;
TensorSquareElement build_rho_abc(int n, const Scalar& a, const Scalar& bc, const PairTable& b);

// Diagonal automorphism E_ij -> (w_i/w_j) E_ij from the squares w_i^2. Exact
// square roots are used where they exist; otherwise a formal root symbol
// omega<i> is declared and registered in roots. flip negates the chosen
// branch of the formal root of index i (1-based) when present.
AlgebraMap diagonal_automorphism(int n, const std::vector<Scalar>& omega_sq, SymbolTable& st,
                                 RootReducer& roots, const std::vector<int>& flip = {});

AlgebraElement diagonal_element(int n, const std::vector<Scalar>& d);

// rho_{a,B,C} with t_d = t_u from w_i^2 = (a^2/bc)^(i-1) w_1^2 and G = sum w_i^2 E_ii.
Structure build_balanced_mn(int n, const Scalar& a, const Scalar& bc, const PairTable& b,
                            const Scalar& omega1_sq, SymbolTable& st);

struct MnParams {
  int n = 0;
  std::vector<std::vector<int>> blocks;  // 1-based, list order is the well-ordering
  std::vector<Scalar> bc;                // per block
  std::vector<Scalar> a;                 // a_i = rho_iiii, size n
  PairTable off;                         // rho_ilil for ordered pairs i != l
  std::vector<Scalar> omega_sq;          // size n
  PairTable cross;                       // overrides of rho_ijji (default: in-block x)
};

struct ClauseResult {
  std::string clause;  // a, b, c, d-i, d-ii, d-iii, d-iv, e
  bool pass = true;
  std::string detail;
};

struct ClassificationReport {
  std::vector<ClauseResult> clauses;
  std::vector<std::vector<int>> derived_blocks;  // components read off rho, in order
  std::vector<std::string> warnings;
  bool pass() const;
  const ClauseResult& clause(const std::string& name) const;
};

TensorSquareElement rho_from_params(const MnParams& p);
// Clause evaluation uses only rho and omega_sq; the partition, the orderings
// and bc_l are read off rho, since only their existence is required.
ClassificationReport classify_rho(int n, const TensorSquareElement& rho, const std::vector<Scalar>& omega_sq);
ClassificationReport classify_params(const MnParams& p);
// Throws std::invalid_argument listing the failing clauses.
Structure build_from_params(const MnParams& p, SymbolTable& st, const std::vector<int>& flip = {});
// Same construction without the classification gate.
Structure assemble_params(const MnParams& p, SymbolTable& st, const std::vector<int>& flip = {});

Structure standardize(const Structure& s);
Structure opposite(const Structure& s);
Structure sweedler_oqa(const Scalar& alpha);
Structure attach_twist(const Structure& s, const AlgebraElement& g);

// Reduced row echelon basis of the minimal oriented quantum subalgebra.
std::vector<AlgebraElement> minimal_subalgebra(const Structure& s);

// Matrix trace on M_n.
std::vector<Scalar> matrix_trace(int n);
// Throws std::invalid_argument naming the failed precondition.
void check_trace(const Structure& s, const std::vector<Scalar>& trace);
Scalar apply_trace(const std::vector<Scalar>& trace, const AlgebraElement& x);

class RrefSpan {
 public:
  explicit RrefSpan(int dim) : dim_(dim) {}
  bool insert(AlgebraElement v);  // true when the span grew
  int size() const { return static_cast<int>(rows_.size()); }
  std::vector<AlgebraElement> basis() const;
  bool contains(const AlgebraElement& v) const;

 private:
  AlgebraElement reduce(AlgebraElement v) const;
  int dim_;
  std::vector<AlgebraElement> rows_;
  std::vector<int> pivots_;
};

}  // namespace oqa
