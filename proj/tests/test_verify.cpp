#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lamtrans/errors.hpp"
#include "lamtrans/laminar.hpp"
#include "lamtrans/verify.hpp"

using namespace lamtrans;

namespace {

template <typename Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind;
  }
  FAIL("expected an error");
  return ErrorKind::UsageError;
}

}  // namespace

TEST_CASE("counting recurrence matches the known sequence") {
  const std::uint64_t expected[] = {1, 1, 4, 26, 236, 2752, 39208, 660032};
  for (int n = 1; n <= 8; ++n) CHECK(count_laminar(n) == expected[n - 1]);
  CHECK(kind_of([] { count_laminar(0); }) == ErrorKind::RangeError);
  CHECK(kind_of([] { count_laminar(17); }) == ErrorKind::RangeError);
}

TEST_CASE("exhaustive enumeration agrees with the count and is laminar") {
  const std::uint64_t expected[] = {1, 1, 4, 26, 236};
  for (int n = 1; n <= 5; ++n) {
    Corpus c = enumerate_laminar(n);
    CHECK(c.systems.size() == expected[n - 1]);
    if (n <= 4) {
      for (const auto& sys : c.systems) {
        CHECK(check_laminar(sys));
        CHECK(int(sys.universe.size()) == n);
      }
    }
  }
  CHECK(kind_of([] { enumerate_laminar(9); }) == ErrorKind::RangeError);
  CHECK(kind_of([] { enumerate_laminar(0); }) == ErrorKind::RangeError);
}

TEST_CASE("random generator is deterministic and laminar") {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL}) {
    for (int n : {1, 3, 7, 12}) {
      SetSystem a = gen_laminar(seed, n);
      SetSystem b = gen_laminar(seed, n);
      CHECK(a == b);
      CHECK(check_laminar(a));
      CHECK(int(a.universe.size()) == n);
    }
  }
  CHECK(!(gen_laminar(1, 7) == gen_laminar(2, 7)));
}

TEST_CASE("the uniqueness oracle accepts the construction on a caterpillar") {
  SetSystem sys = make_set_system(
      {"a", "b", "c", "d"},
      {{"a"}, {"b"}, {"c"}, {"d"}, {"c", "d"}, {"b", "c", "d"}, {"a", "b", "c", "d"}});
  LaminarTree tree = build_laminar_tree(sys);
  ThinPartition tp = thin_partition(tree);
  IdentifyingColouring col = identifying_colouring(tree, tp);
  int parts_checked = 0;
  for (int j = 0; j < 16; ++j) {
    if (tp.parts[j].empty()) continue;
    VerificationReport rep = oracle_unique_rep(tree, tp.parts[j], col.reps[j]);
    CHECK(rep.all_ok());
    ++parts_checked;
  }
  CHECK(parts_checked >= 2);
}

TEST_CASE("unknown check names are rejected") {
  VerifyConfig bad;
  bad.checks = {"no-such-check"};
  CHECK(kind_of([&] { run_verification_suite(bad); }) == ErrorKind::UsageError);
}

TEST_CASE("check name listing is sorted and complete") {
  const auto names = verification_check_names();
  CHECK(names.size() == 10);
  CHECK(std::is_sorted(names.begin(), names.end()));
}

TEST_CASE("scaled-down suite passes every check") {
  VerifyConfig cfg;
  cfg.e2e_max_leaves = 3;
  cfg.lemma_max_leaves = 3;
  cfg.random_systems = 20;
  cfg.random_max_leaves = 6;
  cfg.random_structures = 5;
  cfg.tree_max_nodes = 4;
  VerificationReport report = run_verification_suite(cfg);
  REQUIRE(report.checks.size() == 10);
  for (const auto& c : report.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.ok());
  }
  CHECK(report.all_ok());
  const std::string json = report.to_json();
  CHECK(json.find("\"ok\": true") != std::string::npos);
  const std::string text = report.to_text();
  CHECK(text.find("FAIL") == std::string::npos);

  // determinism of the report given seed and config (timings aside)
  const auto strip_timing = [](const std::string& doc) {
    std::string out;
    std::size_t pos = 0;
    while (pos < doc.size()) {
      const std::size_t eol = doc.find('\n', pos);
      const std::string line = doc.substr(pos, eol - pos);
      if (line.find("\"seconds\"") == std::string::npos) out += line + "\n";
      pos = eol == std::string::npos ? doc.size() : eol + 1;
    }
    return out;
  };
  VerificationReport again = run_verification_suite(cfg);
  CHECK(strip_timing(again.to_json()) == strip_timing(json));
}

TEST_CASE("check filtering runs exactly the selected checks") {
  VerifyConfig cfg;
  cfg.e2e_max_leaves = 3;
  cfg.lemma_max_leaves = 3;
  cfg.random_systems = 10;
  cfg.random_max_leaves = 5;
  cfg.random_structures = 3;
  cfg.tree_max_nodes = 3;
  cfg.checks = {"serialization-roundtrip", "thin-partition-properties"};
  VerificationReport sub = run_verification_suite(cfg);
  REQUIRE(sub.checks.size() == 2);
  CHECK(sub.checks[0].name == "serialization-roundtrip");
  CHECK(sub.checks[1].name == "thin-partition-properties");
  CHECK(sub.all_ok());
}
