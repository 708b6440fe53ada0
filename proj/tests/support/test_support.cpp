#include "test_support.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "bailbench/cli.hpp"
#include "bailbench/common/io.hpp"

namespace bailbench::testing {

namespace fs = std::filesystem;

fs::path fixture(std::string_view relative) { return fs::path(BAILBENCH_FIXTURE_DIR) / relative; }

fs::path scratch_dir(std::string_view name) {
  const auto dir = fs::path(BAILBENCH_SCRATCH_DIR) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"bailbench"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

namespace {

constexpr std::array<const char*, 40> kWords = {
    "accused", "applicant", "police",   "station", "village", "property", "money",    "vehicle",
    "night",   "market",    "witness",  "custody", "trial",   "evidence", "mobile",   "phone",
    "brother", "neighbour", "dispute",  "land",    "shop",    "family",   "hospital", "injury",
    "weapon",  "knife",     "recovery", "account", "bank",    "loan",     "document", "forged",
    "months",  "charge",    "sheet",    "filed",   "long",    "serious",  "prior",    "complaint"};

constexpr std::array<const char*, 6> kActs = {"IPC", "CrPC", "NDPS Act", "Arms Act", "Dowry Prohibition Act",
                                              "Indian Evidence Act"};
constexpr std::array<const char*, 8> kSections = {"302", "307", "379", "420", "438", "41A", "294(b)", "506(1)"};
constexpr std::array<const char*, 4> kPrecedents = {"Sanjay Chandra v. CBI", "Arnesh Kumar v. State of Bihar",
                                                    "Dataram Singh v. State of Uttar Pradesh",
                                                    "Satender Kumar Antil v. CBI"};

template <class T>
T pick(std::mt19937_64& rng, const T* data, std::size_t n) {
  return data[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)];
}

bool coin(std::mt19937_64& rng) { return std::bernoulli_distribution(0.5)(rng); }

}  // namespace

std::string random_sentence(std::mt19937_64& rng, int min_words, int max_words) {
  const int n = std::uniform_int_distribution<int>(min_words, max_words)(rng);
  std::string s;
  for (int i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += pick(rng, kWords.data(), kWords.size());
  }
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

CaseRecord random_case_record(std::mt19937_64& rng, std::string case_id) {
  CaseRecord r;
  r.case_id = std::move(case_id);
  r.court = "fixture";
  const int bt = std::uniform_int_distribution<int>(0, 2)(rng);
  r.bail_type = bt == 0 ? BailType::Regular : bt == 1 ? BailType::Anticipatory : BailType::Cancellation;
  const bool positive = coin(rng);
  if (r.bail_type == BailType::Cancellation) {
    r.outcome = positive ? Outcome::Cancelled : Outcome::NotCancelled;
  } else {
    r.outcome = positive ? Outcome::Granted : Outcome::NotGranted;
  }
  r.is_withdrawal = std::bernoulli_distribution(0.1)(rng);
  if (coin(rng)) r.age = std::uniform_int_distribution<int>(16, 90)(rng);
  if (std::bernoulli_distribution(0.3)(rng)) r.health_issues = random_sentence(rng, 1, 4);
  r.has_past_record = coin(rng);
  const int n_statutes = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < n_statutes; ++i) {
    StatuteCitation c{pick(rng, kSections.data(), kSections.size()), pick(rng, kActs.data(), kActs.size())};
    if (std::find(r.statutes.begin(), r.statutes.end(), c) == r.statutes.end()) r.statutes.push_back(std::move(c));
  }
  const int n_prec = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int i = 0; i < n_prec; ++i) r.precedents.push_back(pick(rng, kPrecedents.data(), kPrecedents.size()));
  r.incident_details = random_sentence(rng, 4, 20);
  r.arguments_supporting = random_sentence(rng, 3, 12);
  r.arguments_opposing = random_sentence(rng, 3, 12);
  if (coin(rng)) r.bail_conditions = random_sentence(rng, 2, 8);
  r.reasoning = random_sentence(rng, 4, 16);
  if (coin(rng)) {
    const auto y = std::chrono::year(std::uniform_int_distribution<int>(2015, 2023)(rng));
    const auto m = std::chrono::month(std::uniform_int_distribution<unsigned>(1, 12)(rng));
    const auto d = std::chrono::day(std::uniform_int_distribution<unsigned>(1, 28)(rng));
    r.date_of_judgment = std::chrono::year_month_day(y, m, d);
    if (coin(rng)) {
      const auto back = std::uniform_int_distribution<int>(0, 400)(rng);
      r.date_of_arrest = std::chrono::year_month_day(std::chrono::sys_days(*r.date_of_judgment) - std::chrono::days(back));
    }
  }
  return r;
}

std::vector<std::pair<std::string, std::string>> snapshot_tree(const fs::path& root) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    out.emplace_back(e.path().lexically_relative(root).generic_string(), read_text_file(e.path()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bailbench::testing
