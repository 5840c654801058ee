#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pinvq/matrix.hpp"

namespace pinvq {

/// The six functions of (A, b) the lower-bound games are played on.
enum class Target { g_inv, g_norm, psi_lsq, psi_sol, psi_norm, kappa };

inline constexpr std::array<Target, 6> kAllTargets = {Target::g_inv,   Target::g_norm,
                                                      Target::psi_lsq, Target::psi_sol,
                                                      Target::psi_norm, Target::kappa};

std::string_view to_string(Target t);
std::optional<Target> parse_target(std::string_view name);

/// A_ε: 1 at (1,1), ε at (2,2), zero elsewhere (padded to m×n), with
/// b = (1, 1, 0, …, 0).
struct EpsFamilyPoint {
  std::size_t rows;
  std::size_t cols;
  Rat eps;
  QMatrix a;
  QVector b;
};

/// Throws DimensionError if m or n < 2 and PreconditionError if eps < 0.
EpsFamilyPoint make_family_point(std::size_t m, std::size_t n, const Rat& eps);

/// Closed-form values at a family point; squared where the value is a norm.
struct ClosedForms {
  QMatrix pinv;
  Rat g_norm_sq;
  Rat psi_lsq_sq;
  QVector xhat;
  Rat psi_norm_sq;
  Rat kappa_sq;
};

ClosedForms closed_forms(const EpsFamilyPoint& pt);

/// A nonnegative quantity |√u − √v| kept in squared form so that every
/// comparison is exact.
struct GapValue {
  Rat u_sq;
  Rat v_sq;

  /// |√u − √v| ≥ eta (eta ≥ 0), decided exactly.
  [[nodiscard]] bool at_least(const Rat& eta) const;
  /// |√u − √v| > eta (eta ≥ 0), decided exactly.
  [[nodiscard]] bool exceeds(const Rat& eta) const;
  /// The value itself when both radicands are rational squares.
  [[nodiscard]] std::optional<Rat> exact() const;
  /// Rational lower bound on the value.
  [[nodiscard]] Rat lower_bound() const;
};

/// Gap between the ε = 2^{-n} family point and ε = 0 for one target, in the
/// target's norm (Frobenius for g_inv, Euclidean for psi_sol, absolute value
/// for the scalar targets).
GapValue family_gap(Target t, std::size_t n, std::size_t m = 2, std::size_t cols = 2);

/// Lower bound on family_gap(t, n) stated alongside the construction:
/// 2 for g_inv and psi_sol, n for g_norm, psi_norm and kappa, 1 for psi_lsq.
Rat stated_gap_bound(Target t, std::size_t n);

/// Separation margin: every gap is ≥ this value, so any η strictly below it
/// separates the whole family from ε = 0 (2 for g_inv and psi_sol, else 1).
Rat separation_margin(Target t);

struct GapRow {
  std::size_t n;
  std::array<GapValue, 6> gaps;  // indexed like kAllTargets
};

/// Rows n = 1..n_max (empty for n_max = 0).
std::vector<GapRow> gap_table(std::size_t n_max);

/// True iff family_gap(t, n) ≥ separation_margin(t) for n = 1..n_max.
bool separation_check(std::size_t n_max, Target t);
/// All six targets.
bool separation_check(std::size_t n_max);

// ---------------------------------------------------------------------------
// The query game.

/// 0-based entry index; the algorithm asks for A(row, col) to within 2^{-precision}.
struct EntryQuery {
  std::size_t row;
  std::size_t col;
  std::size_t precision;
};

struct QueryRecord {
  EntryQuery query;
  Rat answer;
};

/// g_inv commits a matrix, psi_sol a vector, the scalar targets a value.
using Output = std::variant<QMatrix, QVector, Rat>;

struct Commitment {
  Output output;
  /// Algorithms that claim an error bound (in the target's norm) state it here.
  std::optional<Rat> claimed_radius;
};

using AlgorithmStep = std::variant<EntryQuery, Commitment>;

/// Public parameters of a game. The right-hand side b is the same for every
/// family point, so it is public rather than queried.
struct GameSetup {
  std::size_t rows = 2;
  std::size_t cols = 2;
  Target target = Target::g_inv;
  QVector b{1, 1};
  std::size_t budget = 64;
  /// Upper limit on the revealed ε; lets the adversary pick an instance deep
  /// enough in the family for a given error bound.
  std::optional<Rat> eps_cap;
};

GameSetup make_game_setup(std::size_t rows, std::size_t cols, Target target, std::size_t budget,
                          std::optional<Rat> eps_cap = std::nullopt);

/// A deterministic algorithm under test: given the answers so far, ask the
/// next query or commit.
class QueryAlgorithm {
 public:
  virtual ~QueryAlgorithm() = default;
  /// Replayable name, e.g. "rounded-exact:10".
  [[nodiscard]] virtual std::string name() const = 0;
  virtual AlgorithmStep next(const GameSetup& setup, std::span<const QueryRecord> history) = 0;
};

/// Bundled algorithms: "rounded-exact:k", "heuristic:k", "constant",
/// "certified-lambda1:k". The suffix defaults to 10. Returns nullptr for an
/// unknown name.
std::unique_ptr<QueryAlgorithm> make_algorithm(std::string_view name);
std::vector<std::string> bundled_algorithm_names();

struct QueryTranscript {
  GameSetup setup;
  std::string algorithm;
  std::vector<QueryRecord> queries;
  /// Absent when the budget ran out first.
  std::optional<Commitment> commitment;
  std::optional<EpsFamilyPoint> revealed;
  /// Rational lower bound on the distance from the commitment to the revealed
  /// instance's true value.
  Rat achieved_error;
  /// Set when the commitment carried a radius: true iff the distance provably
  /// exceeds it.
  std::optional<bool> claim_violated;

  [[nodiscard]] bool terminated() const { return commitment.has_value(); }
};

/// Plays one game. Every query is answered with the exact entry of A_0. After
/// the commitment the adversary takes ε* = min(2^{-(K+1)}, eps_cap), with
/// 2^{-K} the finest precision queried (K = 0 without queries), and reveals
/// whichever of A_{ε*} and A_0 is farther from the commitment (A_{ε*} on
/// ties). Both are consistent with every answer.
QueryTranscript run_adversary(QueryAlgorithm& alg, const GameSetup& setup);

/// Distance lower bound between a commitment and the target value at `pt`.
Rat output_distance_lower(Target t, const Output& out, const EpsFamilyPoint& pt);

/// Line format:
///   GAME m n target algorithm budget eps_cap|-
///   Q row col k answer            (1-based row/col)
///   COMMIT <16 hex digit hash>
///   CLAIM r VIOLATED|HOLDS        (only with a claimed radius)
///   REVEAL eps
///   ERROR err
/// or a final NONTERMINATING line when the budget ran out.
std::string format_transcript(const QueryTranscript& t);

std::string output_hash(const Output& out);

struct TranscriptVerdict {
  bool consistent;
  std::string reason;  // "CONSISTENT" or what failed
};

/// Checks answer consistency against the revealed instance, the reveal rule
/// and domain containment; for bundled algorithms the game is replayed and
/// must reproduce the transcript byte for byte.
TranscriptVerdict verify_transcript(std::string_view text);

}  // namespace pinvq
