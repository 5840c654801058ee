#include "pinvq/adversary.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "pinvq/creal.hpp"
#include "pinvq/errors.hpp"
#include "pinvq/exact.hpp"
#include "pinvq/pinv_iter.hpp"
#include "pinvq/text_io.hpp"

namespace pinvq {

std::string_view to_string(Target t) {
  switch (t) {
    case Target::g_inv:
      return "g_inv";
    case Target::g_norm:
      return "g_norm";
    case Target::psi_lsq:
      return "psi_lsq";
    case Target::psi_sol:
      return "psi_sol";
    case Target::psi_norm:
      return "psi_norm";
    case Target::kappa:
      return "kappa";
  }
  return "unknown";
}

std::optional<Target> parse_target(std::string_view name) {
  for (Target t : kAllTargets) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

EpsFamilyPoint make_family_point(std::size_t m, std::size_t n, const Rat& eps) {
  if (m < 2 || n < 2) {
    throw DimensionError("family point needs m, n >= 2, got " + std::to_string(m) + "x" +
                         std::to_string(n));
  }
  if (sgn(eps) < 0) throw PreconditionError("family parameter eps must be nonnegative");
  EpsFamilyPoint pt{m, n, eps, QMatrix(m, n), QVector(m)};
  pt.a(0, 0) = 1;
  pt.a(1, 1) = eps;
  pt.b[0] = 1;
  pt.b[1] = 1;
  return pt;
}

ClosedForms closed_forms(const EpsFamilyPoint& pt) {
  ClosedForms cf{QMatrix(pt.cols, pt.rows), 0, 0, QVector(pt.cols), 0, 0};
  cf.pinv(0, 0) = 1;
  cf.xhat[0] = 1;
  if (sgn(pt.eps) == 0) {
    // Second row of A† vanishes; the residual b − A x̂ is e_2.
    cf.g_norm_sq = 1;
    cf.psi_lsq_sq = 1;
    cf.psi_norm_sq = 1;
    cf.kappa_sq = 1;
    return cf;
  }
  const Rat inv = 1 / pt.eps;
  cf.pinv(1, 1) = inv;
  cf.xhat[1] = inv;
  cf.g_norm_sq = 1 + inv * inv;
  cf.psi_lsq_sq = 0;
  cf.psi_norm_sq = 1 + inv * inv;
  cf.kappa_sq = (1 + pt.eps * pt.eps) * (1 + inv * inv);
  return cf;
}

namespace {

std::optional<Rat> rational_sqrt(const Rat& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 ||
      mpz_perfect_square_p(q.get_den_mpz_t()) == 0) {
    return std::nullopt;
  }
  Int num;
  Int den;
  mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
  return make_rat(num, den);
}

}  // namespace

// With u ≥ v: √u − √v ≥ η  <=>  w = u − v − η² ≥ 2η√v  <=>  w ≥ 0 and w² ≥ 4η²v.
bool GapValue::at_least(const Rat& eta) const {
  const Rat& u = std::max(u_sq, v_sq);
  const Rat& v = std::min(u_sq, v_sq);
  const Rat w = u - v - eta * eta;
  return sgn(w) >= 0 && w * w >= 4 * eta * eta * v;
}

bool GapValue::exceeds(const Rat& eta) const {
  const Rat& u = std::max(u_sq, v_sq);
  const Rat& v = std::min(u_sq, v_sq);
  const Rat w = u - v - eta * eta;
  if (sgn(w) < 0) return false;
  if (sgn(w) == 0) return false;
  return w * w > 4 * eta * eta * v;
}

std::optional<Rat> GapValue::exact() const {
  const auto u = rational_sqrt(u_sq);
  const auto v = rational_sqrt(v_sq);
  if (!u || !v) return std::nullopt;
  return Rat(abs(*u - *v));
}

Rat GapValue::lower_bound() const {
  if (auto e = exact()) return *e;
  const Rat& u = std::max(u_sq, v_sq);
  const Rat& v = std::min(u_sq, v_sq);
  const Rat lb = sqrt_lower(u) - sqrt_upper(v);
  return sgn(lb) > 0 ? lb : Rat(0);
}

GapValue family_gap(Target t, std::size_t n, std::size_t m, std::size_t cols) {
  const ClosedForms e = closed_forms(make_family_point(m, cols, pow2(-static_cast<long>(n))));
  const ClosedForms z = closed_forms(make_family_point(m, cols, 0));
  switch (t) {
    case Target::g_inv:
      return {frob_norm_sq(e.pinv - z.pinv), 0};
    case Target::psi_sol:
      return {norm_sq(e.xhat - z.xhat), 0};
    case Target::g_norm:
      return {e.g_norm_sq, z.g_norm_sq};
    case Target::psi_lsq:
      return {e.psi_lsq_sq, z.psi_lsq_sq};
    case Target::psi_norm:
      return {e.psi_norm_sq, z.psi_norm_sq};
    case Target::kappa:
      return {e.kappa_sq, z.kappa_sq};
  }
  throw PreconditionError("unknown target");
}

Rat stated_gap_bound(Target t, std::size_t n) {
  switch (t) {
    case Target::g_inv:
    case Target::psi_sol:
      return 2;
    case Target::psi_lsq:
      return 1;
    case Target::g_norm:
    case Target::psi_norm:
    case Target::kappa:
      return Rat(static_cast<unsigned long>(n));
  }
  return 0;
}

Rat separation_margin(Target t) {
  return (t == Target::g_inv || t == Target::psi_sol) ? Rat(2) : Rat(1);
}

std::vector<GapRow> gap_table(std::size_t n_max) {
  std::vector<GapRow> rows;
  for (std::size_t n = 1; n <= n_max; ++n) {
    GapRow row{n, {}};
    for (std::size_t i = 0; i < kAllTargets.size(); ++i) row.gaps[i] = family_gap(kAllTargets[i], n);
    rows.push_back(std::move(row));
  }
  return rows;
}

bool separation_check(std::size_t n_max, Target t) {
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (!family_gap(t, n).at_least(separation_margin(t))) return false;
  }
  return true;
}

bool separation_check(std::size_t n_max) {
  return std::all_of(kAllTargets.begin(), kAllTargets.end(),
                     [n_max](Target t) { return separation_check(n_max, t); });
}

GameSetup make_game_setup(std::size_t rows, std::size_t cols, Target target, std::size_t budget,
                          std::optional<Rat> eps_cap) {
  if (eps_cap && sgn(*eps_cap) <= 0) throw PreconditionError("eps cap must be positive");
  const EpsFamilyPoint pt = make_family_point(rows, cols, 0);
  return {rows, cols, target, pt.b, budget, std::move(eps_cap)};
}

namespace {

const char* output_kind(const Output& out) {
  if (std::holds_alternative<QMatrix>(out)) return "matrix";
  if (std::holds_alternative<QVector>(out)) return "vector";
  return "scalar";
}

Rat target_value_sq(Target t, const ClosedForms& cf) {
  switch (t) {
    case Target::g_norm:
      return cf.g_norm_sq;
    case Target::psi_lsq:
      return cf.psi_lsq_sq;
    case Target::psi_norm:
      return cf.psi_norm_sq;
    case Target::kappa:
      return cf.kappa_sq;
    default:
      throw PreconditionError("not a scalar target");
  }
}

// Squared distance when it is rational (matrix and vector targets).
std::optional<Rat> output_distance_sq(Target t, const Output& out, const EpsFamilyPoint& pt) {
  const ClosedForms cf = closed_forms(pt);
  if (t == Target::g_inv) {
    const auto* c = std::get_if<QMatrix>(&out);
    if (c == nullptr || c->rows() != pt.cols || c->cols() != pt.rows) {
      throw PreconditionError("g_inv needs an n x m matrix commitment, got a " +
                              std::string(output_kind(out)));
    }
    return frob_norm_sq(*c - cf.pinv);
  }
  if (t == Target::psi_sol) {
    const auto* c = std::get_if<QVector>(&out);
    if (c == nullptr || c->dim() != pt.cols) {
      throw PreconditionError("psi_sol needs a length-n vector commitment, got a " +
                              std::string(output_kind(out)));
    }
    return norm_sq(*c - cf.xhat);
  }
  if (!std::holds_alternative<Rat>(out)) {
    throw PreconditionError(std::string(to_string(t)) + " needs a scalar commitment, got a " +
                            output_kind(out));
  }
  return std::nullopt;
}

// |c − √f| > r, exactly.
bool scalar_distance_exceeds(const Rat& c, const Rat& f, const Rat& r) {
  if (sgn(c) >= 0) return GapValue{c * c, f}.exceeds(r);
  const Rat slack = r + c;  // r − |c|
  if (sgn(slack) < 0) return true;
  return f > slack * slack;
}

bool claim_violated(Target t, const Output& out, const EpsFamilyPoint& pt, const Rat& radius) {
  if (auto d = output_distance_sq(t, out, pt)) return *d > radius * radius;
  return scalar_distance_exceeds(std::get<Rat>(out), target_value_sq(t, closed_forms(pt)), radius);
}

}  // namespace

Rat output_distance_lower(Target t, const Output& out, const EpsFamilyPoint& pt) {
  if (auto d = output_distance_sq(t, out, pt)) {
    if (auto e = rational_sqrt(*d)) return *e;
    return sqrt_lower(*d);
  }
  const Rat& c = std::get<Rat>(out);
  const Rat f = target_value_sq(t, closed_forms(pt));
  if (sgn(c) >= 0) return GapValue{c * c, f}.lower_bound();
  return -c + sqrt_lower(f);
}

namespace {

// Farther-from-commitment comparison; exact for matrix/vector targets.
bool strictly_farther(Target t, const Output& out, const EpsFamilyPoint& x, const EpsFamilyPoint& y) {
  const auto dx = output_distance_sq(t, out, x);
  const auto dy = output_distance_sq(t, out, y);
  if (dx && dy) return *dx > *dy;
  return output_distance_lower(t, out, x) > output_distance_lower(t, out, y);
}

// Shared shape of the bundled algorithms: query every entry at precision k in
// row-major order, then commit something computed from the answers.
class QueryAllAlgorithm : public QueryAlgorithm {
 public:
  explicit QueryAllAlgorithm(std::size_t k) : k_(k) {}

  AlgorithmStep next(const GameSetup& setup, std::span<const QueryRecord> history) override {
    const std::size_t total = setup.rows * setup.cols;
    if (history.size() < total) {
      const std::size_t i = history.size();
      return EntryQuery{i / setup.cols, i % setup.cols, k_};
    }
    QMatrix answers(setup.rows, setup.cols);
    for (const auto& rec : history.first(total)) answers(rec.query.row, rec.query.col) = rec.answer;
    return commit(setup, answers);
  }

 protected:
  virtual Commitment commit(const GameSetup& setup, const QMatrix& answers) = 0;
  std::size_t k_;
};

Rat approx_sqrt(const Rat& q, std::size_t k) { return sqrt_enclosure(q, k + 2).lower; }

// Maps an approximate pseudoinverse to the committed value of the target.
Output output_from_pinv(Target t, const QMatrix& a, const QMatrix& c, const QVector& b,
                        std::size_t k) {
  switch (t) {
    case Target::g_inv:
      return c;
    case Target::psi_sol:
      return c * b;
    case Target::g_norm:
      return approx_sqrt(frob_norm_sq(c), k);
    case Target::psi_lsq:
      return approx_sqrt(norm_sq(a * (c * b) - b), k);
    case Target::psi_norm:
      return approx_sqrt(norm_sq(c * b), k);
    case Target::kappa:
      return approx_sqrt(frob_norm_sq(a) * frob_norm_sq(c), k);
  }
  throw PreconditionError("unknown target");
}

Output zero_output(const GameSetup& setup) {
  switch (setup.target) {
    case Target::g_inv:
      return QMatrix(setup.cols, setup.rows);
    case Target::psi_sol:
      return QVector(setup.cols);
    default:
      return Rat(0);
  }
}

QMatrix round_answers(const QMatrix& a, std::size_t k) {
  QMatrix r = a;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j)
      r(i, j) = GaussRat(round_dyadic(a(i, j).re, k), round_dyadic(a(i, j).im, k));
  return r;
}

class RoundedExact final : public QueryAllAlgorithm {
 public:
  using QueryAllAlgorithm::QueryAllAlgorithm;
  [[nodiscard]] std::string name() const override { return "rounded-exact:" + std::to_string(k_); }

 protected:
  Commitment commit(const GameSetup& setup, const QMatrix& answers) override {
    const QMatrix a = round_answers(answers, k_);
    return {output_from_pinv(setup.target, a, pinv_exact(a), setup.b, k_), std::nullopt};
  }
};

class Heuristic final : public QueryAllAlgorithm {
 public:
  using QueryAllAlgorithm::QueryAllAlgorithm;
  [[nodiscard]] std::string name() const override { return "heuristic:" + std::to_string(k_); }

 protected:
  Commitment commit(const GameSetup& setup, const QMatrix& answers) override {
    if (answers.is_zero()) return {zero_output(setup), std::nullopt};
    const auto h = pinv_heuristic(answers, pow2(-static_cast<long>(k_)), 200);
    return {output_from_pinv(setup.target, answers, h.approx, setup.b, k_), std::nullopt};
  }
};

class Constant final : public QueryAlgorithm {
 public:
  [[nodiscard]] std::string name() const override { return "constant"; }
  AlgorithmStep next(const GameSetup& setup, std::span<const QueryRecord>) override {
    return Commitment{zero_output(setup), std::nullopt};
  }
};

// Certified iteration with the certificate (rank of the answers, λ = 1). The
// certificate is valid for A_0 and invalid for every A_ε with 0 < ε < 1.
class CertifiedLambdaOne final : public QueryAllAlgorithm {
 public:
  using QueryAllAlgorithm::QueryAllAlgorithm;
  [[nodiscard]] std::string name() const override {
    return "certified-lambda1:" + std::to_string(k_);
  }

 protected:
  Commitment commit(const GameSetup& setup, const QMatrix& answers) override {
    const Certificate cert{rank_factorize(answers).rank, Rat(1)};
    try {
      if (setup.target == Target::g_inv) {
        auto res = pinv_certified(answers, cert, k_);
        return {std::move(res.ball.center), res.ball.radius};
      }
      const Derived which = *parse_derived(to_string(setup.target));
      const auto enc = derived_certified(which, answers, setup.b, cert, k_);
      if (const auto* v = std::get_if<BallVector>(&enc)) return {v->center, v->radius};
      const auto& s = std::get<BallScalar>(enc);
      return {s.center, s.radius};
    } catch (const PreconditionError&) {
      return {zero_output(setup), std::nullopt};
    }
  }
};

}  // namespace

std::unique_ptr<QueryAlgorithm> make_algorithm(std::string_view name) {
  std::string_view base = name;
  std::size_t k = 10;
  if (const auto colon = name.find(':'); colon != std::string_view::npos) {
    base = name.substr(0, colon);
    const std::string_view digits = name.substr(colon + 1);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) return nullptr;
  }
  if (base == "rounded-exact") return std::make_unique<RoundedExact>(k);
  if (base == "heuristic") return std::make_unique<Heuristic>(k);
  if (base == "certified-lambda1") return std::make_unique<CertifiedLambdaOne>(k);
  if (base == "constant") return std::make_unique<Constant>();  // takes no precision
  return nullptr;
}

std::vector<std::string> bundled_algorithm_names() {
  return {"rounded-exact", "heuristic", "constant", "certified-lambda1"};
}

QueryTranscript run_adversary(QueryAlgorithm& alg, const GameSetup& setup) {
  if (setup.eps_cap && sgn(*setup.eps_cap) <= 0) throw PreconditionError("eps cap must be positive");
  const EpsFamilyPoint zero = make_family_point(setup.rows, setup.cols, 0);
  if (setup.b != zero.b) throw PreconditionError("game right-hand side must be the family b");

  QueryTranscript t{setup, alg.name(), {}, std::nullopt, std::nullopt, 0, std::nullopt};
  for (;;) {
    AlgorithmStep step = alg.next(setup, t.queries);
    if (auto* c = std::get_if<Commitment>(&step)) {
      t.commitment = std::move(*c);
      break;
    }
    const auto& q = std::get<EntryQuery>(step);
    if (t.queries.size() >= setup.budget) return t;  // non-terminating within budget
    if (q.row >= setup.rows || q.col >= setup.cols) {
      throw PreconditionError("query (" + std::to_string(q.row + 1) + ", " +
                              std::to_string(q.col + 1) + ") outside the matrix");
    }
    t.queries.push_back({q, zero.a(q.row, q.col).re});
  }

  std::size_t finest = 0;
  for (const auto& rec : t.queries) finest = std::max(finest, rec.query.precision);
  Rat eps = pow2(-static_cast<long>(finest) - 1);
  if (setup.eps_cap && *setup.eps_cap < eps) eps = *setup.eps_cap;

  const Output& out = t.commitment->output;
  EpsFamilyPoint perturbed = make_family_point(setup.rows, setup.cols, eps);
  t.revealed = strictly_farther(setup.target, out, zero, perturbed) ? zero : std::move(perturbed);
  t.achieved_error = output_distance_lower(setup.target, out, *t.revealed);
  if (t.commitment->claimed_radius) {
    t.claim_violated = claim_violated(setup.target, out, *t.revealed, *t.commitment->claimed_radius);
  }
  return t;
}

std::string output_hash(const Output& out) {
  std::string canon;
  if (const auto* m = std::get_if<QMatrix>(&out)) {
    canon = "matrix\n" + format_matrix(*m);
  } else if (const auto* v = std::get_if<QVector>(&out)) {
    canon = "vector\n" + format_vector(*v);
  } else {
    canon = "scalar\n" + to_fraction_string(std::get<Rat>(out)) + "\n";
  }
  // 64-bit FNV-1a
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_transcript(const QueryTranscript& t) {
  std::ostringstream os;
  os << "GAME " << t.setup.rows << ' ' << t.setup.cols << ' ' << to_string(t.setup.target) << ' '
     << t.algorithm << ' ' << t.setup.budget << ' '
     << (t.setup.eps_cap ? to_fraction_string(*t.setup.eps_cap) : std::string("-")) << '\n';
  for (const auto& rec : t.queries) {
    os << "Q " << rec.query.row + 1 << ' ' << rec.query.col + 1 << ' ' << rec.query.precision << ' '
       << to_fraction_string(rec.answer) << '\n';
  }
  if (!t.terminated()) {
    os << "NONTERMINATING\n";
    return os.str();
  }
  os << "COMMIT " << output_hash(t.commitment->output) << '\n';
  if (t.commitment->claimed_radius) {
    os << "CLAIM " << to_fraction_string(*t.commitment->claimed_radius) << ' '
       << (t.claim_violated.value_or(false) ? "VIOLATED" : "HOLDS") << '\n';
  }
  os << "REVEAL " << to_fraction_string(t.revealed->eps) << '\n';
  os << "ERROR " << to_fraction_string(t.achieved_error) << '\n';
  return os.str();
}

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

std::size_t parse_count(const std::string& s, const char* what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string("malformed ") + what + " '" + s + "'");
  }
  return v;
}

TranscriptVerdict fail(std::string reason) { return {false, std::move(reason)}; }

}  // namespace

TranscriptVerdict verify_transcript(std::string_view text) {
  std::vector<std::vector<std::string>> lines;
  {
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
      auto words = split_words(line);
      if (!words.empty()) lines.push_back(std::move(words));
    }
  }
  if (lines.empty() || lines[0][0] != "GAME" || lines[0].size() != 7) {
    return fail("missing or malformed GAME header");
  }

  try {
    const auto& h = lines[0];
    const std::size_t rows = parse_count(h[1], "row count");
    const std::size_t cols = parse_count(h[2], "column count");
    const auto target = parse_target(h[3]);
    if (!target) return fail("unknown target '" + h[3] + "'");
    const std::string& algorithm = h[4];
    const std::size_t budget = parse_count(h[5], "budget");
    std::optional<Rat> cap;
    if (h[6] != "-") cap = parse_rat(h[6]);
    const GameSetup setup = make_game_setup(rows, cols, *target, budget, cap);

    std::size_t i = 1;
    std::vector<QueryRecord> queries;
    for (; i < lines.size() && lines[i][0] == "Q"; ++i) {
      const auto& q = lines[i];
      if (q.size() != 5) return fail("malformed query line " + std::to_string(i + 1));
      const std::size_t r = parse_count(q[1], "query row");
      const std::size_t c = parse_count(q[2], "query column");
      if (r < 1 || r > rows || c < 1 || c > cols) {
        return fail("query outside the matrix on line " + std::to_string(i + 1));
      }
      queries.push_back({{r - 1, c - 1, parse_count(q[3], "query precision")}, parse_rat(q[4])});
    }
    if (queries.size() > budget) return fail("more queries than the budget allows");

    std::optional<EpsFamilyPoint> revealed;
    if (i < lines.size() && lines[i][0] == "NONTERMINATING") {
      if (i + 1 != lines.size()) return fail("content after NONTERMINATING");
      revealed = make_family_point(rows, cols, 0);
    } else {
      if (i >= lines.size() || lines[i][0] != "COMMIT" || lines[i].size() != 2) {
        return fail("missing COMMIT line");
      }
      ++i;
      if (i < lines.size() && lines[i][0] == "CLAIM") {
        if (lines[i].size() != 3 || (lines[i][2] != "VIOLATED" && lines[i][2] != "HOLDS")) {
          return fail("malformed CLAIM line");
        }
        ++i;
      }
      if (i >= lines.size() || lines[i][0] != "REVEAL" || lines[i].size() != 2) {
        return fail("missing REVEAL line");
      }
      const Rat eps = parse_rat(lines[i][1]);
      ++i;
      if (i >= lines.size() || lines[i][0] != "ERROR" || lines[i].size() != 2) {
        return fail("missing ERROR line");
      }
      if (sgn(parse_rat(lines[i][1])) < 0) return fail("negative achieved error");
      if (i + 1 != lines.size()) return fail("content after ERROR");

      std::size_t finest = 0;
      for (const auto& rec : queries) finest = std::max(finest, rec.query.precision);
      Rat rule = pow2(-static_cast<long>(finest) - 1);
      if (cap && *cap < rule) rule = *cap;
      if (sgn(eps) != 0 && eps != rule) return fail("revealed eps does not follow the reveal rule");
      revealed = make_family_point(rows, cols, eps);
      if (frob_norm_sq(revealed->a) > 2 || norm_sq(revealed->b) != 2) {
        return fail("revealed instance outside the domain");
      }
    }

    for (const auto& rec : queries) {
      const Rat truth = revealed->a(rec.query.row, rec.query.col).re;
      if (abs(rec.answer - truth) > pow2(-static_cast<long>(rec.query.precision))) {
        return fail("answer at (" + std::to_string(rec.query.row + 1) + ", " +
                    std::to_string(rec.query.col + 1) + ") inconsistent with revealed instance");
      }
    }

    if (auto alg = make_algorithm(algorithm)) {
      if (alg->name() != algorithm) return fail("algorithm name is not canonical");
      const std::string replay = format_transcript(run_adversary(*alg, setup));
      std::string canonical;
      for (const auto& words : lines) {
        for (std::size_t w = 0; w < words.size(); ++w) canonical += (w ? " " : "") + words[w];
        canonical += '\n';
      }
      if (replay != canonical) return fail("replay of " + algorithm + " does not reproduce the transcript");
    }
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return {true, "CONSISTENT"};
}

}  // namespace pinvq
