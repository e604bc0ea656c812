#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "diagtype/affine.hpp"
#include "diagtype/cluster_perm.hpp"
#include "diagtype/gkm.hpp"
#include "diagtype/hessenberg.hpp"
#include "diagtype/homology.hpp"
#include "diagtype/polynomial.hpp"

namespace diagtype {

/// Thrown when a face needs the Betti polynomial of a cluster that is not an
/// indifference graph.
class NonIndifferenceFace : public std::invalid_argument {
 public:
  NonIndifferenceFace(const std::string& what, std::vector<int> cluster)
      : std::invalid_argument(what), cluster(std::move(cluster)) {}
  std::vector<int> cluster;
};

/// n - #blocks.
int face_rank(const Clustering& c);

/// Product over blocks of the Hessenberg Betti polynomial of the induced cluster.
linalg::Polynomial face_betti_polynomial(const Clustering& c, const Graph& g);

/// A(t) = (B - Inter) / (t-1)^(n-1) for a connected indifference graph.
/// Memoized per isomorphism class; safe to call concurrently.
linalg::Polynomial compute_A(const Graph& g);

/// Sum over proper clusterings C of (n! / prod |V_i|!) * prod A(V_i) * (t-1)^(n-|C|).
linalg::Polynomial inter_polynomial(const Graph& g);

struct AbfpConsistency {
  bool consistent = false;
  /// Unknowns are b_0..b_|E| followed by a_0..a_d, d = |E| - (n-1).
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  /// Dimension of the solution family before b_0 = 1 and b_1 = beta2 are imposed.
  std::optional<std::size_t> family_dimension;
  std::optional<mpq_class> forced_b2;
  long beta2 = 0;
  long beta4 = 0;
  std::string detail;
};

/// Coefficient identity B - Inter = A (t-1)^(n-1), palindromic B, then
/// b_0 = 1 and b_1 = beta2; compares the consequences with beta4.
AbfpConsistency abfp_consistency_test(const Graph& g, long beta2, long beta4);

enum class Verdict { Formal, NonFormal, Undetermined };
enum class EvidenceKind { ForbiddenSkeletonHomology, TotalBettiMismatch, AbfpInconsistency };
std::string evidence_name(EvidenceKind k);

struct SkeletonObstruction {
  int skeleton_rank = 2;
  /// Homology checked for dimensions 0..checked_up_to.
  int checked_up_to = 1;
  std::vector<long> betti_gf2;
  std::vector<long> betti_q;
  int dimension = 0;
};

struct FormalityOptions {
  GkmOptions gkm;
  HomologyOptions homology;
  int skeleton_rank = 2;
  /// The total-Betti strategy runs in its listed place only when its largest
  /// matrix has at most this many columns; otherwise it moves after the
  /// ABFP test.
  std::uint64_t quick_gkm_columns = 100'000;
  std::size_t max_simplices = 20'000'000;
  /// Compute B, A for formal inputs (n <= 8).
  bool artifacts = true;
};

struct FormalityReport {
  Verdict verdict = Verdict::Undetermined;
  std::optional<IndifferenceCertificate> certificate;
  std::optional<ForbiddenWitness> witness;
  std::optional<EvidenceKind> evidence;
  std::optional<SkeletonObstruction> skeleton;
  std::optional<GkmTotal> gkm;
  std::optional<AbfpConsistency> abfp;
  std::optional<linalg::Polynomial> B;
  std::optional<linalg::Polynomial> A;
  std::optional<linalg::Polynomial> inter;
  /// Strategies attempted, in order, with their outcomes.
  std::vector<std::string> log;
};

FormalityReport formality_report(const Graph& g, const FormalityOptions& opts = {});

/// Re-validates a NonFormal report: the witness induces its named graph and
/// the recorded numbers form an obstruction. Formal reports are checked
/// through their certificate.
bool verify_report(const Graph& g, const FormalityReport& r);

std::string report_to_json(const Graph& g, const FormalityReport& r);

}  // namespace diagtype
