// Copyright 2026 The lbayes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <json.hpp>
#include <map>
#include <random>
#include <set>
#include <mutex>
#include <thread>

#include "lbayes/io.hpp"
#include "lbayes/proposer/corpus.hpp"
#include "lbayes/proposer/filter.hpp"
#include "lbayes/proposer/llm_client.hpp"
#include "lbayes/proposer/problem.hpp"
#include "lbayes/proposer/prompt.hpp"
#include "support/paths.hpp"

namespace lbayes {
namespace {

namespace fs = std::filesystem;

ErrorCode error_code(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

std::string error_message(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

ProblemSpec coin_problem() { return load_problem(test::data_path("problems/coin/problem.txt")); }

std::vector<ModelSource> sources_from(const fs::path& dir, const std::vector<std::string>& stems) {
  std::vector<ModelSource> out;
  for (const auto& stem : stems) {
    out.push_back({source_id(out.size()), stem + ".txt", read_text_file(dir / (stem + ".txt"))});
  }
  return out;
}

std::vector<ModelSource> all_sources(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<ModelSource> out;
  for (const auto& f : files) out.push_back({source_id(out.size()), f.filename().string(), read_text_file(f)});
  return out;
}

TEST(Problem, ParsesCoinFile) {
  const auto p = coin_problem();
  EXPECT_EQ(p.id, "coin");
  EXPECT_NE(p.problem_text.find("flipped 20 times"), std::string::npos);
  EXPECT_EQ(p.goal_text, "The probability that the next flip comes up heads.");
  ASSERT_NE(p.dataset.find("y"), nullptr);
  EXPECT_EQ(p.dataset.find("y")->values.size(), 20u);
}

TEST(Problem, Errors) {
  EXPECT_EQ(error_code([] { parse_problem("PROBLEM\nsomething\nGOAL\nz\n"); }), ErrorCode::kParseProblem);
  EXPECT_EQ(error_code([] { parse_problem("PROBLEM\nsomething\nDATA\n\nGOAL\nz\n"); }), ErrorCode::kParseProblem);
  EXPECT_EQ(error_code([] { parse_problem("preamble\nPROBLEM\nx\nDATA\n{}\nGOAL\nz\n"); }), ErrorCode::kParseProblem);
  EXPECT_EQ(error_code([] { parse_problem("PROBLEM\nx\nDATA\n{\"a\": [1, \"b\"]}\nGOAL\nz\n"); }),
            ErrorCode::kDataDomain);
  EXPECT_EQ(error_code([] { load_problem("/nonexistent/problem.txt"); }), ErrorCode::kIo);
}

TEST(Prompt, UserMessageHasBlocksInOrder) {
  const auto msgs = assemble_prompt(coin_problem(), load_prompt_resources(test::data_path("prompts")));
  ASSERT_EQ(msgs.size(), 6u);
  EXPECT_EQ(msgs.front().role, "system");
  EXPECT_EQ(msgs[1].role, "user");
  EXPECT_EQ(msgs[2].role, "assistant");
  EXPECT_EQ(msgs.back().role, "user");
  const auto& last = msgs.back().content;
  const auto p = last.find("PROBLEM\n");
  const auto d = last.find("\nDATA\n");
  const auto g = last.find("\nGOAL\n");
  EXPECT_EQ(p, 0u);
  ASSERT_NE(d, std::string::npos);
  ASSERT_NE(g, std::string::npos);
  EXPECT_LT(d, g);
}

TEST(Prompt, NoFewShotExamples) {
  const auto dir = test::scratch_dir("prompt-empty");
  write_text_file(dir / "system_prompt.txt", "You write models.\n");
  const auto msgs = assemble_prompt(coin_problem(), load_prompt_resources(dir));
  ASSERT_EQ(msgs.size(), 2u);
  EXPECT_EQ(msgs[0], (ChatMessage{"system", "You write models.\n"}));
  EXPECT_EQ(msgs[1].content, format_user_message(coin_problem()));
}

TEST(Prompt, MissingResources) {
  const auto dir = test::scratch_dir("prompt-missing");
  EXPECT_EQ(error_code([&] { load_prompt_resources(dir); }), ErrorCode::kMissingResource);
  write_text_file(dir / "system_prompt.txt", "x");
  write_text_file(dir / "examples" / "01_a_input.txt", "in");
  EXPECT_EQ(error_code([&] { load_prompt_resources(dir); }), ErrorCode::kMissingResource);
}

TEST(Prompt, MatchesGoldenSnapshot) {
  const auto json = messages_to_json(assemble_prompt(coin_problem(), load_prompt_resources(test::data_path("prompts"))));
  const auto golden = test::golden_path("coin_prompt.json");
  if (std::getenv("LBAYES_UPDATE_GOLDEN") != nullptr) write_text_file(golden, json);
  EXPECT_EQ(json, read_text_file(golden));
}

TEST(Corpus, SingleFileRepeats) {
  const auto dir = test::scratch_dir("corpus-one");
  write_text_file(dir / "only.txt", "MODEL\nmodel{}\n");
  ProposerConfig cfg;
  cfg.corpus_dir = dir;
  const auto s = corpus_propose(cfg, 3);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].raw_text, s[2].raw_text);
  EXPECT_EQ(s[0].id, "m0001");
  EXPECT_EQ(s[1].id, "m0002");
  EXPECT_EQ(s[2].id, "m0003");
  EXPECT_EQ(s[1].origin, "only.txt");
}

TEST(Corpus, SeededSelection) {
  ProposerConfig cfg;
  cfg.corpus_dir = test::data_path("problems/coin/corpus5");
  cfg.seed = 99;
  const auto a = corpus_propose(cfg, 50);
  const auto b = corpus_propose(cfg, 50);
  std::vector<std::string> oa;
  std::vector<std::string> ob;
  for (std::size_t i = 0; i < a.size(); ++i) {
    oa.push_back(a[i].origin);
    ob.push_back(b[i].origin);
  }
  EXPECT_EQ(oa, ob);
  cfg.seed = 100;
  const auto c = corpus_propose(cfg, 50);
  std::vector<std::string> oc;
  for (const auto& s : c) oc.push_back(s.origin);
  EXPECT_NE(oa, oc);
}

TEST(Corpus, UniformFrequencies) {
  const auto dir = test::scratch_dir("corpus-ten");
  for (int i = 0; i < 10; ++i) write_text_file(dir / ("f" + std::to_string(i) + ".txt"), std::to_string(i));
  ProposerConfig cfg;
  cfg.corpus_dir = dir;
  cfg.seed = 1234;
  std::map<std::string, int> counts;
  for (const auto& s : corpus_propose(cfg, 10000)) ++counts[s.origin];
  ASSERT_EQ(counts.size(), 10u);
  for (const auto& [name, n] : counts) EXPECT_NEAR(n, 1000, 50) << name;
}

TEST(Corpus, Empty) {
  ProposerConfig cfg;
  cfg.corpus_dir = test::scratch_dir("corpus-empty");
  EXPECT_EQ(error_code([&] { corpus_propose(cfg, 1); }), ErrorCode::kEmptyCorpus);
}

TEST(ProposerConfig, Validation) {
  ProposerConfig cfg;
  cfg.n_candidates = 0;
  EXPECT_EQ(error_code([&] { cfg.check(); }), ErrorCode::kInvalidConfig);
  cfg = {};
  cfg.temperature = -0.5;
  EXPECT_EQ(error_code([&] { cfg.check(); }), ErrorCode::kInvalidConfig);
}

TEST(Filter, Buckets) {
  const std::vector<ModelSource> sources{
      {"m0001", "a", "no markers here"},
      {"m0002", "b", "MODEL\nparams{real x;} model{x ~ normal(0,1)}"},
      {"m0003", "c", "MODEL\nparams{real x;} model{x ~ normal(0,1);}"},
      {"m0004", "d", "THOUGHTS\nt\nMODEL\nparams{real x;} model{x ~ normal(0,1);} goal{z = x;}"},
  };
  const auto r = filter_valid(sources);
  EXPECT_EQ(r.stats, (RejectionStats{4, 1, 1, 1, 1}));
  ASSERT_EQ(r.rejected.size(), 3u);
  EXPECT_EQ(r.rejected[0].stage, RejectionStage::kMissingBlocks);
  EXPECT_FALSE(r.rejected[0].code);
  EXPECT_EQ(r.rejected[1].code, ErrorCode::kSyntax);
  EXPECT_EQ(r.rejected[2].code, ErrorCode::kNoGoal);
  ASSERT_EQ(r.accepted.size(), 1u);
  EXPECT_EQ(r.accepted[0].id, "m0004");
  EXPECT_EQ(r.accepted[0].thoughts, "t");
  EXPECT_EQ(to_string(RejectionStage::kParse), "parse_failed");
}

TEST(Filter, AuthoredTenFixtureSubset) {
  const auto sources = sources_from(test::data_path("fixtures/gate"),
                                    {"coin__beta11", "coin__beta22", "coin__no_model_marker", "coin__uniform",
                                     "heights__missing_semicolon", "coin__truncnormal", "rain__iid", "coin__double_prior",
                                     "rain__markov", "heights__normal"});
  const auto r = filter_valid(sources);
  EXPECT_EQ(r.stats, (RejectionStats{10, 1, 1, 1, 7}));
}

TEST(Filter, GateCorpusCoversEveryRejectionCode) {
  const auto r = filter_valid(all_sources(test::data_path("fixtures/gate")));
  EXPECT_EQ(r.stats, (RejectionStats{30, 1, 4, 5, 20}));
  std::set<ErrorCode> codes;
  for (const auto& rej : r.rejected) {
    if (rej.code) codes.insert(*rej.code);
  }
  for (const auto code : {ErrorCode::kSyntax, ErrorCode::kUnknownDist, ErrorCode::kUndeclaredName, ErrorCode::kNoPrior,
                          ErrorCode::kDoubleSample, ErrorCode::kNoGoal, ErrorCode::kBadArg, ErrorCode::kBadTarget}) {
    EXPECT_TRUE(codes.count(code)) << to_string(code);
  }
}

TEST(Filter, Conservation) {
  std::mt19937_64 rng(4);
  const auto pool = all_sources(test::data_path("fixtures/gate"));
  for (int t = 0; t < 50; ++t) {
    std::vector<ModelSource> picked;
    const int n = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) picked.push_back(pool[rng() % pool.size()]);
    const auto s = filter_valid(picked).stats;
    EXPECT_EQ(s.generated, n);
    EXPECT_EQ(s.generated, s.missing_blocks + s.parse_failed + s.validation_failed + s.accepted);
  }
}

// Local chat-completion endpoint with scripted behaviour per path.
class MockServer {
 public:
  MockServer() {
    server_.Post("/fixed", [this](const httplib::Request& req, httplib::Response& res) {
      record(req);
      const int now = ++in_flight_;
      int seen = max_in_flight_.load();
      while (now > seen && !max_in_flight_.compare_exchange_weak(seen, now)) {
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(20));
      --in_flight_;
      res.set_content(completion("THOUGHTS\nflat\nMODEL\nparams{real x;} model{x ~ normal(0,1);} goal{z = x;}"),
                      "application/json");
    });
    server_.Post("/flaky", [this](const httplib::Request& req, httplib::Response& res) {
      record(req);
      if (flaky_calls_++ < 2) {
        res.status = 500;
        return;
      }
      res.set_content(completion("MODEL\nok"), "application/json");
    });
    server_.Post("/down", [](const httplib::Request&, httplib::Response& res) { res.status = 503; });
    server_.Post("/forbidden", [](const httplib::Request&, httplib::Response& res) { res.status = 403; });
    server_.Post("/malformed", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"id": "cmpl-42", "choices": []})", "application/json");
    });
    server_.Post("/slow", [](const httplib::Request&, httplib::Response& res) {
      std::this_thread::sleep_for(std::chrono::milliseconds(2500));
      res.set_content(completion("late"), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~MockServer() {
    server_.stop();
    thread_.join();
  }

  std::string url(const std::string& path) const { return "http://127.0.0.1:" + std::to_string(port_) + path; }

  std::vector<nlohmann::json> bodies() {
    const std::lock_guard<std::mutex> lock(mutex_);
    return bodies_;
  }
  std::vector<std::string> auth_headers() {
    const std::lock_guard<std::mutex> lock(mutex_);
    return auth_;
  }
  int max_in_flight() const { return max_in_flight_; }

 private:
  static std::string completion(const std::string& content) {
    return nlohmann::json{{"id", "cmpl-1"}, {"choices", {{{"index", 0}, {"message", {{"role", "assistant"}, {"content", content}}}}}}}
        .dump();
  }

  void record(const httplib::Request& req) {
    const std::lock_guard<std::mutex> lock(mutex_);
    bodies_.push_back(nlohmann::json::parse(req.body));
    auth_.push_back(req.get_header_value("Authorization"));
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::mutex mutex_;
  std::vector<nlohmann::json> bodies_;
  std::vector<std::string> auth_;
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
  std::atomic<int> flaky_calls_{0};
};

ProposerConfig llm_config(const MockServer& server, const std::string& path) {
  ProposerConfig cfg;
  cfg.mode = ProposerMode::kLlm;
  cfg.endpoint_url = server.url(path);
  cfg.api_key_env = "";
  cfg.model_name = "test-model";
  cfg.temperature = 0.7;
  cfg.backoff_ms = 5;
  return cfg;
}

const std::vector<ChatMessage> kMessages{{"system", "sys"}, {"user", "PROBLEM\np\n"}};

TEST(LlmPropose, FixedCompletion) {
  MockServer server;
  auto cfg = llm_config(server, "/fixed");
  cfg.max_in_flight = 3;
  const auto p = llm_propose(cfg, kMessages, 12);
  ASSERT_EQ(p.sources.size(), 12u);
  for (std::size_t i = 0; i < p.sources.size(); ++i) {
    EXPECT_EQ(p.sources[i].id, source_id(i));
    EXPECT_EQ(p.sources[i].raw_text, p.sources[0].raw_text);
    EXPECT_EQ(p.retries[i], 0);
  }
  EXPECT_LE(server.max_in_flight(), 3);
  const auto bodies = server.bodies();
  ASSERT_EQ(bodies.size(), 12u);
  EXPECT_EQ(bodies[0]["model"], "test-model");
  EXPECT_EQ(bodies[0]["temperature"], 0.7);
  EXPECT_EQ(bodies[0]["messages"][1]["role"], "user");
  EXPECT_EQ(bodies[0]["messages"][1]["content"], "PROBLEM\np\n");
  EXPECT_EQ(server.auth_headers()[0], "");
}

TEST(LlmPropose, RetriesServerErrors) {
  MockServer server;
  ::setenv("LBAYES_TEST_KEY", "sk-very-secret", 1);
  auto cfg = llm_config(server, "/flaky");
  cfg.api_key_env = "LBAYES_TEST_KEY";
  std::vector<std::string> lines;
  const auto p = llm_propose(cfg, kMessages, 1, [&](const std::string& l) { lines.push_back(l); });
  ASSERT_EQ(p.sources.size(), 1u);
  EXPECT_EQ(p.sources[0].raw_text, "MODEL\nok");
  EXPECT_EQ(p.retries[0], 2);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_NE(lines[0].find("HTTP 500"), std::string::npos);
  EXPECT_NE(lines[2].find("after 2 retries"), std::string::npos);
  for (const auto& l : lines) EXPECT_EQ(l.find("sk-very-secret"), std::string::npos);
  EXPECT_EQ(server.auth_headers()[0], "Bearer sk-very-secret");
}

TEST(LlmPropose, MalformedBody) {
  MockServer server;
  const auto msg = error_message([&] { llm_propose(llm_config(server, "/malformed"), kMessages, 1); });
  EXPECT_NE(msg.find("E_BAD_RESPONSE"), std::string::npos);
  EXPECT_NE(msg.find("request 0"), std::string::npos);
  EXPECT_NE(msg.find("cmpl-42"), std::string::npos);
}

TEST(LlmPropose, HttpFailures) {
  MockServer server;
  EXPECT_EQ(error_code([&] { llm_propose(llm_config(server, "/forbidden"), kMessages, 2); }), ErrorCode::kHttp);
  auto cfg = llm_config(server, "/down");
  cfg.max_retries = 2;
  EXPECT_EQ(error_code([&] { llm_propose(cfg, kMessages, 1); }), ErrorCode::kHttp);
}

TEST(LlmPropose, Timeout) {
  MockServer server;
  auto cfg = llm_config(server, "/slow");
  cfg.request_timeout_s = 1;
  cfg.max_retries = 0;
  EXPECT_EQ(error_code([&] { llm_propose(cfg, kMessages, 1); }), ErrorCode::kTimeout);
}

TEST(LlmPropose, MissingApiKey) {
  MockServer server;
  auto cfg = llm_config(server, "/fixed");
  cfg.api_key_env = "LBAYES_TEST_UNSET_KEY";
  ::unsetenv("LBAYES_TEST_UNSET_KEY");
  EXPECT_EQ(error_code([&] { llm_propose(cfg, kMessages, 1); }), ErrorCode::kMissingApiKey);
  EXPECT_TRUE(server.bodies().empty());
}

}  // namespace
}  // namespace lbayes
