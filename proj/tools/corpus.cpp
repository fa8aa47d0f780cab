#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "cli.hpp"

namespace s5::cli {

namespace {

enum class Expect { Provable, NotProvable, Unknown };

struct CorpusEntry {
  std::string id;
  Expect expected = Expect::Unknown;
  RootedHypersequent goal;
  std::size_t line = 0;
};

struct Outcome {
  SearchStatus status = SearchStatus::NotProvable;
  bool checked = true;
  double ms = 0;
};

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

Expect expect_from(const std::string& s, std::size_t line) {
  if (s == "provable") return Expect::Provable;
  if (s == "notProvable") return Expect::NotProvable;
  if (s == "unknown") return Expect::Unknown;
  throw UsageError("line " + std::to_string(line) + ": unknown expectation '" + s + "'");
}

std::vector<CorpusEntry> parse_corpus(const std::string& text) {
  std::vector<CorpusEntry> out;
  std::set<std::string> ids;
  std::istringstream in(text);
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    std::string l = trim(raw);
    if (l.empty() || l.front() == '#') continue;
    auto a = l.find(';');
    auto b = a == std::string::npos ? a : l.find(';', a + 1);
    if (b == std::string::npos)
      throw UsageError("line " + std::to_string(line) + ": expected 'id ; expected ; sequent'");
    CorpusEntry e;
    e.id = trim(l.substr(0, a));
    e.expected = expect_from(trim(l.substr(a + 1, b - a - 1)), line);
    try {
      e.goal = goal_from(trim(l.substr(b + 1)));
    } catch (const UsageError& err) {
      throw UsageError("line " + std::to_string(line) + ": " + err.what());
    }
    e.line = line;
    if (!ids.insert(e.id).second) throw UsageError("duplicate id " + e.id);
    out.push_back(std::move(e));
  }
  return out;
}

bool matches(Expect e, SearchStatus s) {
  if (e == Expect::Unknown || s == SearchStatus::BudgetExceeded) return true;
  return (e == Expect::Provable) == (s == SearchStatus::Provable);
}

}  // namespace

int run_corpus(const std::string& path, std::size_t jobs, const SearchBudget& budget,
               std::ostream& os) {
  const auto entries = parse_corpus(read_file(path));
  std::vector<Outcome> results(entries.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < entries.size();) {
      auto t0 = std::chrono::steady_clock::now();
      auto v = prove(entries[i].goal, budget);
      Outcome& o = results[i];
      o.status = v.status;
      if (v.provable()) o.checked = check_proof(v.proof).ok;
      o.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(entries.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j + 1 < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::size_t width = 2;
  for (const auto& e : entries) width = std::max(width, e.id.size());
  std::size_t proved = 0, refuted = 0, budgeted = 0, mismatched = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& o = results[i];
    const bool ok = o.checked && matches(entries[i].expected, o.status);
    proved += o.status == SearchStatus::Provable;
    refuted += o.status == SearchStatus::NotProvable;
    budgeted += o.status == SearchStatus::BudgetExceeded;
    mismatched += !ok;
    os << std::left << std::setw(static_cast<int>(width)) << entries[i].id << "  "
       << std::setw(14) << status_name(o.status) << std::right << std::setw(10) << std::fixed
       << std::setprecision(2) << o.ms << " ms  "
       << (!o.checked ? "CHECK FAILED" : ok ? "ok" : "MISMATCH") << '\n';
  }
  os << "\n" << std::left << std::setw(12) << "entries" << entries.size() << '\n'
     << std::setw(12) << "provable" << proved << '\n'
     << std::setw(12) << "unprovable" << refuted << '\n'
     << std::setw(12) << "budget" << budgeted << '\n'
     << std::setw(12) << "mismatches" << mismatched << '\n';
  if (mismatched) return kRefuted;
  return budgeted ? kBudget : kOk;
}

}  // namespace s5::cli
