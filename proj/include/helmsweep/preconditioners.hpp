#ifndef HELMSWEEP_PRECONDITIONERS_HPP
#define HELMSWEEP_PRECONDITIONERS_HPP

#include "helmsweep/krylov.hpp"
#include "helmsweep/subdomain.hpp"

namespace helmsweep {

/// Double-sweep optimized Schwarz, run as a preconditioner: one forward
/// sweep over subdomains 1..J-1 and one backward sweep J..1 from zero
/// initial data, glued with the backward 0/1 weights.  Transmission kinds
/// may differ between the sweeps (the last subdomain is solved only once,
/// in the backward sweep, with the backward kinds).
struct DosmConfig {
  KindPair forward;
  KindPair backward;
  /// zero the source on each subdomain's right overlap (interior and far
  /// interface) during the forward sweep; the source-transfer equivalence
  /// configuration
  bool zero_right_overlap_forward = false;
};

class DosmPreconditioner {
 public:
  DosmPreconditioner(const LineOperator& op, const StripPartition& p,
                     const TransmissionSet& ts, DosmConfig cfg);

  Vector apply(const Vector& f) const;

  struct Iterates {
    std::vector<Vector> half;  ///< forward-sweep subdomain iterates (1..J-1)
    std::vector<Vector> full;  ///< backward-sweep subdomain iterates (1..J)
  };
  Vector apply_collect(const Vector& f, Iterates* out) const;

  const StripPartition& partition() const { return *p_; }

 private:
  Vector local_rhs(int j, const Vector& f, const Vector* left_nb,
                   const Vector* right_nb, bool forward_sweep) const;

  const LineOperator* op_ = nullptr;
  const StripPartition* p_ = nullptr;
  DosmConfig cfg_;
  std::vector<SubdomainSystem> fwd_;
  std::vector<SubdomainSystem> bwd_;
  bool same_kinds_ = false;
  // per subdomain and sweep: (S - A) interface couplers and Dirichlet flags
  struct IfaceData {
    bool has = false;
    bool dirichlet = false;
    Matrix SmA;  ///< interface operator minus the original diagonal block
  };
  struct SweepIfaces {
    IfaceData left, right;
  };
  std::vector<SweepIfaces> fwd_if_, bwd_if_;
  WeightingOperator glue_;

  SweepIfaces make_ifaces(int j, const TransmissionSet& ts,
                          const KindPair& kinds) const;
  friend class PosmIterator;
};

/// Global deferred-correction form: sequential corrections from local
/// residual solves with homogeneous transmission data.  `ras` glues with
/// restricted 0/1 weights and full residual restriction; `ash` restricts
/// the residual with the weights and extends the correction fully.
enum class GdcVariant { Ras, Ash };

class GdcPreconditioner {
 public:
  GdcPreconditioner(const LineOperator& op, const StripPartition& p,
                    const TransmissionSet& ts, const KindPair& kinds,
                    GdcVariant variant);
  Vector apply(const Vector& f) const;

 private:
  const LineOperator* op_;
  const StripPartition* p_;
  GdcVariant variant_;
  std::vector<SubdomainSystem> sys_;
  std::vector<bool> dir_left_, dir_right_;
  WeightingOperator fwd_w_, bwd_w_;
};

/// Substructured form: one double sweep mapping the right-going interface
/// data lambda_> to its next iterate.  Exposes the affine decomposition
/// lambda -> F lambda + g for Krylov acceleration on (I - F).
class SubstructuredDosm {
 public:
  SubstructuredDosm(const LineOperator& op, const StripPartition& p,
                    const TransmissionSet& ts, const KindPair& kinds);

  /// one double sweep; lambda holds the stacked right-interface data
  /// (J-1 blocks).  volume_out, when given, receives the glued backward
  /// iterates.
  Vector map(const Vector& lambda, const Vector& f,
             Vector* volume_out = nullptr) const;
  Eigen::Index trace_size() const;
  /// volume solution reconstructed from a converged lambda
  Vector volume(const Vector& lambda, const Vector& f) const;

 private:
  const LineOperator* op_;
  const StripPartition* p_;
  std::vector<SubdomainSystem> sys_;
  std::vector<Matrix> SmA_left_, SmA_right_;  // S - A per interface side
  WeightingOperator glue_;
};

/// Block-LU sweep (AILU/sweeping family): forward/backward substitution
/// over the line blocks of each strip with the chosen left-interface
/// operator; the right condition is Dirichlet by construction.
class LuSweepPreconditioner {
 public:
  LuSweepPreconditioner(const LineOperator& op, const StripPartition& p,
                        const TransmissionSet& ts,
                        const TransmissionConfig& left_kind);
  Vector apply(const Vector& f) const;

 private:
  const LineOperator* op_;
  const StripPartition* p_;
  SchurSequence seq_;  // per-line factors, restarted at strip interfaces
};

/// Source transfer: forward sweep with transferred volume sources through
/// the 0/1 damping matrices, backward sweep with Dirichlet on the right.
class SourceTransferPreconditioner {
 public:
  SourceTransferPreconditioner(const LineOperator& op,
                               const StripPartition& p,
                               const TransmissionSet& ts,
                               const TransmissionConfig& kind);
  Vector apply(const Vector& f) const;

  /// residual of the four transfer-validity products for subdomain j;
  /// returns the largest entry magnitude over all four
  double std_constraint_residual(int j) const;

 private:
  const LineOperator* op_;
  const StripPartition* p_;
  std::vector<SubdomainSystem> fwd_, bwd_;
  // damping weights per subdomain over [first(j+1) .. last(j)] lines
  std::vector<Vector> damping_;
  WeightingOperator glue_;
};

/// Single-layer-potential preconditioner; form 2 couples neighbors through
/// doubled Neumann sources on shared interface operators, form 1 through
/// one-extra-layer index sets.
class SlpPreconditioner {
 public:
  SlpPreconditioner(const LineOperator& op, const StripPartition& p,
                    const TransmissionSet& ts, const TransmissionConfig& kind,
                    int form);
  Vector apply(const Vector& f) const;
  /// residual between sweeps (test hook for the sparsity claim)
  Vector intermediate_residual(const Vector& f) const;

 private:
  Vector forward_field(const Vector& f, std::vector<Vector>* locals) const;

  const LineOperator* op_;
  const StripPartition* p_;
  int form_ = 2;
  std::vector<SubdomainSystem> sys_;
  std::vector<int> ext_lo_, ext_hi_;  // form 1 extended ranges
};

/// Polarized traces: independent local solves, decoupled forward and
/// backward trace recursions through the subdomain Green blocks, and the
/// discrete representation formula for the recovery.
class PolarizedTracesPreconditioner {
 public:
  /// split_fraction t declares A_{j<}^< = t*A_{j<}; the output is
  /// independent of t (split invariance), which tests exercise.
  PolarizedTracesPreconditioner(const LineOperator& op,
                                const StripPartition& p,
                                const TransmissionSet& ts,
                                const TransmissionConfig& kind,
                                double split_fraction = 0.5);
  Vector apply(const Vector& f) const;

 private:
  const LineOperator* op_;
  const StripPartition* p_;
  double t_ = 0.5;
  std::vector<SubdomainSystem> sys_;
};

/// Parallel optimized Schwarz: one Jacobi-style simultaneous update of all
/// subdomain iterates from the neighbors' previous iterates.
class PosmIterator {
 public:
  PosmIterator(const LineOperator& op, const StripPartition& p,
               const TransmissionSet& ts, const KindPair& kinds);
  std::vector<Vector> iterate(const std::vector<Vector>& prev,
                              const Vector& f,
                              bool reverse_schedule = false) const;
  std::vector<Vector> zero_iterates() const;
  Vector glue(const std::vector<Vector>& locals) const;

 private:
  const LineOperator* op_;
  const StripPartition* p_;
  std::vector<SubdomainSystem> sys_;
  std::vector<DosmPreconditioner::SweepIfaces> if_;
  WeightingOperator glue_;
  friend class DosmPreconditioner;
};

/// Residual substructuring: with an inner preconditioner whose error
/// operator I - A M^{-1} has few nonzero rows, solve the reduced system on
/// that row support and correct.  Returns the solution and the reduced
/// dimension through the report.
struct ResidSubReport {
  Eigen::Index reduced_dim = 0;
  bool degenerate = false;  ///< support detection failed, fell back to full
  IterationReport inner;
};

Vector residual_substructure_solve(const LineOperator& op,
                                   const StripPartition& p,
                                   const LinearMap& inner_precond,
                                   const Vector& f, double tol, int maxit,
                                   ResidSubReport* report = nullptr);

/// support rows used by residual substructuring: every dof within one line
/// of an interior interface gridline
std::vector<Eigen::Index> interface_adjacent_rows(const LineOperator& op,
                                                  const StripPartition& p);

/// Optimal Schwarz preconditioner with global transmission conditions on a
/// strip decomposition: two phases of independent solves with exact
/// transparent operators and an all-to-all trace exchange in between; exact
/// in one application.
class GlobalOsmPreconditioner {
 public:
  GlobalOsmPreconditioner(const LineOperator& op, const StripPartition& p,
                          const TransmissionSet& ts);
  Vector apply(const Vector& f) const;

 private:
  const LineOperator* op_;
  const StripPartition* p_;
  std::vector<SubdomainSystem> sys_;     // transparent subdomain systems
  std::vector<Matrix> S_left_, S_right_; // exact Schur operators per side
  // factored exteriors for evaluating the trace maps F_{l,j}
  std::vector<SubdomainSystem> ext_left_, ext_right_;
  WeightingOperator glue_;
};

}  // namespace helmsweep

#endif
