#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "pinvq/pinvq.hpp"

using namespace pinvq;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pinvq_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& contents) {
    const fs::path p = dir_ / name;
    write_text_file(p, contents);
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

// Extracts the text after "label " on the line starting with it.
std::string field(const std::string& report, const std::string& label) {
  std::istringstream is(report);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind(label + " ", 0) == 0) return line.substr(label.size() + 1);
  }
  return {};
}

}  // namespace

TEST_F(CliTest, ExactPinvOfFamilyPoint) {
  const auto m = write("aeps.txt", format_matrix(make_family_point(3, 2, Rat(1, 2)).a));
  const auto r = run({"pinv", "--mode", "exact", "--matrix", m});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "[[1,0,0],[0,2,0]]\n");
}

TEST_F(CliTest, OutFileHoldsMatrixGrammar) {
  const QMatrix a{{1, 2}, {2, 4}, {0, Rat(1, 3)}};
  const auto m = write("a.txt", format_matrix(a));
  const auto r = run({"pinv", "--matrix", m, "--out", path("x.txt")});
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(read_matrix_file(path("x.txt")), pinv_exact(a));
}

TEST_F(CliTest, GapsForGInv) {
  const auto r = run({"gaps", "--n-max", "5", "--function", "g_inv"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "n g_inv\n1 2\n2 4\n3 8\n4 16\n5 32\n");
}

TEST_F(CliTest, EmptyGapTableIsHeaderOnly) {
  const auto r = run({"gaps", "--n-max", "0"});
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(r.out, "n g_inv g_norm psi_lsq psi_sol psi_norm kappa\n");
}

TEST_F(CliTest, IrrationalGapsCarryRadius) {
  const auto r = run({"gaps", "--n-max", "1", "--function", "g_norm", "--precision", "10"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("1.2361±2^-10"), std::string::npos) << r.out;  // √5 − 1
}

TEST_F(CliTest, CertifiedPinvBallEnclosesExact) {
  const QMatrix a{{1, 0, 0}, {0, Rat(1, 2), 0}};
  const auto m = write("a.txt", format_matrix(a));
  const auto r = run({"pinv", "--mode", "certified", "--matrix", m, "--rank", "2",
                      "--lambda-lb", "1/4", "--precision", "20", "--out", path("c.txt")});
  ASSERT_EQ(r.status, 0) << r.err;
  const Rat radius = parse_rat(field(r.out, "radius").substr(0, field(r.out, "radius").find(' ')));
  EXPECT_LE(radius, pow2(-20));
  const QMatrix center = read_matrix_file(path("c.txt"));
  EXPECT_LE(frob_norm_sq(center - pinv_exact(a)), radius * radius);
  EXPECT_NE(field(r.out, "decimal").find("± 2^-20"), std::string::npos);
}

TEST_F(CliTest, CertifiedWithoutCertificateExitsThree) {
  const auto m = write("a.txt", "2 2\n1 0\n0 1\n");
  for (const auto& verb : {"pinv", "lsq", "cond", "gnorm"}) {
    std::vector<std::string> args{verb, "--mode", "certified", "--matrix", m, "--rank", "2"};
    if (std::string(verb) == "lsq") {
      args.push_back("--vector");
      args.push_back(write("b.txt", "2\n1 1\n"));
    }
    const auto r = run(args);
    EXPECT_EQ(r.status, 3) << verb;
    EXPECT_NE(r.err.find("no algorithm can derive"), std::string::npos) << r.err;
  }
  EXPECT_EQ(run({"trace", "--matrix", m}).status, 3);
}

TEST_F(CliTest, KappaEnclosureContainsFiveHalves) {
  const auto m = write("a.txt", format_matrix(make_family_point(2, 2, Rat(1, 2)).a));
  const auto r = run({"cond", "--mode", "certified", "--matrix", m, "--rank", "2",
                      "--lambda-lb", "1/4", "--precision", "16"});
  ASSERT_EQ(r.status, 0) << r.err;
  const std::string interval = field(r.out, "kappa_interval");
  ASSERT_GE(interval.size(), 4u);
  const auto comma = interval.find(", ");
  const Rat lo = parse_rat(interval.substr(1, comma - 1));
  const Rat hi = parse_rat(interval.substr(comma + 2, interval.size() - comma - 3));
  EXPECT_LE(lo, Rat(5, 2));
  EXPECT_GE(hi, Rat(5, 2));
  EXPECT_LE(hi - lo, pow2(-15));
  EXPECT_NE(r.out.find("2.5000"), std::string::npos);
}

TEST_F(CliTest, ExactScalarsAndLeastSquares) {
  const auto m = write("a.txt", format_matrix(make_family_point(2, 2, Rat(1, 2)).a));
  const auto k = run({"cond", "--matrix", m});
  EXPECT_EQ(k.status, 0);
  EXPECT_EQ(field(k.out, "kappa^2"), "25/4");
  EXPECT_EQ(field(k.out, "kappa").substr(0, 3), "5/2");
  const auto g = run({"gnorm", "--matrix", m});
  EXPECT_EQ(field(g.out, "gnorm^2"), "5");
  EXPECT_NE(field(g.out, "gnorm").find("2.2360"), std::string::npos);

  const auto z = write("z.txt", format_matrix(make_family_point(2, 2, 0).a));
  const auto b = write("b.txt", "2\n1 1\n");
  const auto l = run({"lsq", "--matrix", z, "--vector", b});
  EXPECT_EQ(l.status, 0);
  EXPECT_EQ(field(l.out, "xhat"), "[1,0]");
  EXPECT_EQ(field(l.out, "residual^2"), "1");
}

TEST_F(CliTest, CertifiedLeastSquares) {
  const auto m = write("a.txt", format_matrix(make_family_point(3, 2, Rat(1, 4)).a));
  const auto b = write("b.txt", "3\n1 1 1\n");
  const auto r = run({"lsq", "--mode", "certified", "--matrix", m, "--vector", b, "--rank", "2",
                      "--lambda-lb", "1/16", "--precision", "12"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(field(r.out, "residual_decimal").find("1.0000"), std::string::npos) << r.out;
  EXPECT_NE(field(r.out, "xhat_decimal").find("± 2^-12"), std::string::npos);
}

TEST_F(CliTest, HeuristicReportsNoBound) {
  const auto m = write("a.txt", format_matrix(make_family_point(2, 2, pow2(-20)).a));
  const auto r = run({"pinv", "--mode", "heuristic", "--matrix", m, "--precision", "30",
                      "--budget", "5"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("max_iter reached"), std::string::npos);
  EXPECT_NE(r.out.find("error_bound none"), std::string::npos);
  EXPECT_EQ(run({"cond", "--mode", "heuristic", "--matrix", m}).status, 2);
}

TEST_F(CliTest, FamilyRoundTrip) {
  for (const std::string eps : {"0", "1", "1/2", "3/1024"}) {
    const auto r = run({"family", "--dims", "4", "3", "--eps", eps, "--out", path("f.txt")});
    ASSERT_EQ(r.status, 0);
    const QMatrix expect = make_family_point(4, 3, parse_rat(eps)).a;
    EXPECT_EQ(parse_matrix(r.out), expect);
    EXPECT_EQ(read_matrix_file(path("f.txt")), expect);
  }
  EXPECT_EQ(run({"family", "--eps", "-1"}).status, 2);
  EXPECT_EQ(run({"family", "--eps", "0.5"}).status, 2);
  EXPECT_EQ(run({"family", "--dims", "1", "2"}).status, 2);
}

TEST_F(CliTest, AdversaryTranscriptVerifies) {
  const auto r = run({"adversary", "--function", "g_inv", "--algorithm", "heuristic:8",
                      "--eps", "1/4096", "--out", path("t.txt")});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out.rfind("GAME 2 2 g_inv heuristic:8", 0), 0u) << r.out;
  const auto v = run({"verify-transcript", path("t.txt")});
  EXPECT_EQ(v.status, 0);
  EXPECT_EQ(v.out, "CONSISTENT\n");

  std::string tampered = r.out;
  tampered.replace(tampered.find("REVEAL"), 6, "REVEAL 1/3\nX");
  const auto bad = run({"verify-transcript", write("bad.txt", tampered)});
  EXPECT_EQ(bad.status, 3);
  EXPECT_NE(bad.out, "CONSISTENT\n");
}

TEST_F(CliTest, TraceOutputParses) {
  const auto m = write("a.txt", "2 2\n2 0\n0 1\n");
  const auto r = run({"trace", "--matrix", m, "--rank", "2", "--lambda-lb", "1", "--precision", "30"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto trace = parse_trace(r.out);
  ASSERT_FALSE(trace.iterates.empty());
  EXPECT_LE(trace.iterates.back().error_bound, pow2(-30));
  EXPECT_EQ(trace.stopped_at, trace.iterates.back().k);
}

TEST_F(CliTest, InputErrorsExitTwo) {
  EXPECT_EQ(run({"frobnicate"}).status, 2);
  EXPECT_EQ(run({}).status, 2);
  EXPECT_EQ(run({"pinv"}).status, 2);
  EXPECT_EQ(run({"pinv", "--matrix", path("missing.txt")}).status, 2);
  EXPECT_EQ(run({"pinv", "--matrix", write("bad.txt", "2 2\n1 0.5\n0 1\n")}).status, 2);
  EXPECT_EQ(run({"pinv", "--matrix", write("a.txt", "1 1\n1\n"), "--precision", "0"}).status, 2);
  EXPECT_EQ(run({"gaps", "--n-max", "3", "--function", "nope"}).status, 2);
  EXPECT_EQ(run({"adversary", "--algorithm", "nope"}).status, 2);
  EXPECT_EQ(run({"--help"}).status, 0);
}

TEST_F(CliTest, BadCertificateExitsThree) {
  const auto m = write("a.txt", "2 2\n1 0\n0 1\n");
  // rank · λ exceeds ‖A‖_F²
  const auto r = run({"pinv", "--mode", "certified", "--matrix", m, "--rank", "2",
                      "--lambda-lb", "5"});
  EXPECT_EQ(r.status, 3);
  const auto z = write("z.txt", "2 2\n0 0\n0 0\n");
  EXPECT_EQ(run({"trace", "--matrix", z, "--rank", "1", "--lambda-lb", "1"}).status, 3);
}

TEST_F(CliTest, DeterministicReports) {
  oracle::MatrixGenerator gen(5);
  const auto m = write("a.txt", format_matrix(gen.with_rank(3, 3, 2, true)));
  const auto a = run({"pinv", "--matrix", m});
  const auto b = run({"pinv", "--matrix", m});
  EXPECT_EQ(a.out, b.out);
  const auto g1 = run({"adversary", "--function", "kappa", "--algorithm", "rounded-exact:6"});
  const auto g2 = run({"adversary", "--function", "kappa", "--algorithm", "rounded-exact:6"});
  EXPECT_EQ(g1.out, g2.out);
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string bin = PINVQ_CLI_BINARY;
  const auto quiet = " > /dev/null 2>&1";
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + quiet).c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("gaps --n-max 3"), 0);
  EXPECT_EQ(status("gaps --n-max 0"), 2);
  const auto m = write("a.txt", "2 2\n1 0\n0 1\n");
  EXPECT_EQ(status("pinv --mode certified --matrix " + m), 3);
}
