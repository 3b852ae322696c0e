#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "lsim/agents/http_backend.hpp"
#include "lsim/agents/learner.hpp"
#include "lsim/agents/scripted_backend.hpp"
#include "lsim/agents/structured.hpp"
#include "support.hpp"

using namespace lsim;
using namespace lsim::agents;
namespace lt = lsim::testing;
using nlohmann::json;

namespace {

class FixedBackend : public Backend {
  public:
    explicit FixedBackend(std::string reply) : reply_(std::move(reply)) {}
    Completion complete(const ChatRequest& r) override {
        requests.push_back(r);
        return {reply_, 1};
    }
    json describe() const override { return {{"type", "fixed"}}; }
    std::vector<ChatRequest> requests;

  private:
    std::string reply_;
};

/// Chat-completions stub on a random local port.
class StubServer {
  public:
    explicit StubServer(std::function<void(const httplib::Request&, httplib::Response&, int call)> h)
        : handler_(std::move(h)) {
        svr_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
            handler_(req, res, ++calls);
        });
        port_ = svr_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { svr_.listen_after_bind(); });
        svr_.wait_until_ready();
    }
    ~StubServer() {
        svr_.stop();
        thread_.join();
    }
    std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions"; }
    std::atomic<int> calls{0};

  private:
    httplib::Server svr_;
    std::function<void(const httplib::Request&, httplib::Response&, int)> handler_;
    int port_ = 0;
    std::thread thread_;
};

std::string completion_body(const std::string& text) {
    return json{{"choices", {{{"message", {{"role", "assistant"}, {"content", text}}}}}}}.dump();
}

ChatRequest simple_request() {
    ChatRequest r;
    r.agent_role = "learner";
    r.template_id = "weekly_learning";
    r.messages = {{"system", "You are a student."}, {"user", "Summarise."}};
    return r;
}

}  // namespace

TEST_SUITE("agents") {
    TEST_CASE("answer sets") {
        auto s = parse_answer_set(
            "Sure!\n```json\n{\"answers\": [{\"question_num\": 2, \"answer\": \"b\", \"reasoning\": \"r2\"},"
            "{\"question_num\": \"1\", \"answer\": \"a\", \"reasoning\": \"r1\"}]}\n```",
            2, false);
        REQUIRE(s.answers.size() == 2);
        CHECK(s.answers[0].question_num == 1);
        CHECK(s.answers[0].answer == "a");
        CHECK_THROWS_AS(parse_answer_set("{\"answers\": [{\"question_num\": 1, \"answer\": \"a\"}]}", 2, false),
                        SchemaError);
        CHECK_THROWS_AS(parse_answer_set("{\"answers\": [{\"question_num\": 1, \"answer\": \"a\", \"confidence\": "
                                         "\"140\"}]}",
                                         1, true),
                        SchemaError);
        CHECK_THROWS_AS(parse_answer_set("no json here", 1, false), SchemaError);
        std::vector<AnswerItem> items = {{1, "x", "because", 70}, {2, "y", "so", 20}};
        auto back = parse_answer_set(render_answer_set(items), 2, true);
        CHECK(back.answers == items);
    }

    TEST_CASE("choices, self-concept and moderator replies") {
        auto w = parse_choice("{\"choice\": \"Summarize\", \"content\": \"notes\"}", ChoiceKind::consolidation);
        CHECK(w.decision == Decision::work);
        CHECK(w.content == std::optional<std::string>("notes"));
        auto r = parse_choice("{\"choice\": \"Rest\", \"content\": \"None\"}", ChoiceKind::reflection);
        CHECK(r.decision == Decision::rest);
        CHECK_FALSE(r.content);
        CHECK(parse_choice("{\"choice\": \"Review\", \"reason\": \"exam\"}", ChoiceKind::pre_exam_review).decision ==
              Decision::work);
        CHECK_THROWS_AS(parse_choice("{\"choice\": \"Summarize\", \"content\": \"\"}", ChoiceKind::consolidation),
                        SchemaError);
        CHECK_THROWS_AS(parse_choice("{\"choice\": \"dance\"}", ChoiceKind::consolidation), SchemaError);

        auto sc = parse_self_concept("{\"self-concept\": \"72\", \"description\": \"ok\"}");
        CHECK(sc.score == 72);
        CHECK(sc.description == "ok");
        CHECK_THROWS_AS(parse_self_concept("{\"mood\": 3}"), SchemaError);

        auto m = parse_moderator("Judgment: end\nReason: The views have become repetitive.");
        CHECK(m.end);
        CHECK(m.reason == "The views have become repetitive.");
        CHECK_FALSE(parse_moderator("judgement: Continue\nreason: new points").end);
        CHECK_THROWS_AS(parse_moderator("I think they should go on."), SchemaError);
    }

    TEST_CASE("scripted replies are pure in the request") {
        auto bank = std::make_shared<corpus::QuestionBank>(corpus::load_question_bank(lt::sample_corpus()));
        ScriptedBackend a(bank, ScriptedConfig::from_json(json::object(), 5));
        ScriptedBackend b(bank, ScriptedConfig::from_json(json::object(), 5));
        ChatRequest r = simple_request();
        r.template_id = "choice_consolidation";
        r.context = {{"learner", "lazy"}, {"month", 3}, {"material", "notes"}};
        CHECK(a.complete(r).text == b.complete(r).text);
        CHECK(a.complete(r).text == a.complete(r).text);
        CHECK(a.describe() == b.describe());
        CHECK(flip_verb_form("broken") == std::optional<std::string>("breaking"));
        CHECK(flip_verb_form("breaking") == std::optional<std::string>("broken"));
        CHECK_THROWS_AS(ScriptedConfig::from_json({{"moderator", "sometimes"}}, 1), Error);
    }

    TEST_CASE("http backend retries timeouts with backoff") {
        ::setenv("LSIM_TEST_TOKEN", "sekrit", 1);
        std::string auth;
        StubServer stub([&](const httplib::Request& req, httplib::Response& res, int call) {
            if (call <= 2) std::this_thread::sleep_for(std::chrono::milliseconds(400));
            auth = req.get_header_value("Authorization");
            res.set_content(completion_body("hello"), "application/json");
        });
        HttpSettings s;
        s.endpoint = stub.endpoint();
        s.model = "m";
        s.api_key_env = "LSIM_TEST_TOKEN";
        s.timeout_ms = 150;
        s.max_retries = 3;
        s.backoff_ms = 10;
        HttpBackend backend(s);
        auto c = backend.complete(simple_request());
        CHECK(c.text == "hello");
        CHECK(c.attempts == 3);
        CHECK(auth == "Bearer sekrit");
    }

    TEST_CASE("http backend: 5xx retried, 4xx fatal, exhaustion reported") {
        StubServer flaky([](const httplib::Request&, httplib::Response& res, int call) {
            if (call == 1) {
                res.status = 503;
                return;
            }
            res.set_content(completion_body("ok"), "application/json");
        });
        HttpSettings s;
        s.endpoint = flaky.endpoint();
        s.backoff_ms = 1;
        CHECK(HttpBackend(s).complete(simple_request()).attempts == 2);

        StubServer denied([](const httplib::Request&, httplib::Response& res, int) { res.status = 401; });
        s.endpoint = denied.endpoint();
        try {
            HttpBackend(s).complete(simple_request());
            FAIL("expected BackendError");
        } catch (const BackendError& e) {
            CHECK(e.attempts() == 1);
        }
        CHECK(denied.calls == 1);

        StubServer down([](const httplib::Request&, httplib::Response& res, int) { res.status = 500; });
        s.endpoint = down.endpoint();
        s.max_retries = 2;
        try {
            HttpBackend(s).complete(simple_request());
            FAIL("expected BackendError");
        } catch (const BackendError& e) {
            CHECK(e.attempts() == 3);
        }
        CHECK(down.calls == 3);

        CHECK_THROWS_AS(HttpSettings::from_json({{"api_key", "x"}}), Error);
    }

    TEST_CASE("unparseable exam batches degrade to blank answers") {
        auto bank = corpus::load_question_bank(lt::sample_corpus());
        auto exam = corpus::assemble_exam(bank, corpus::ExamKind::weekly, 1, 1, 1);
        FixedBackend backend("I refuse to answer in JSON.");
        CollectingSink sink;
        memory::ShortTermMemory stm(3);
        memory::LongTermStore ltm("lazy");
        AgentContext ctx;
        ctx.agent_id = "lazy";
        ctx.agent_role = "learner";
        ctx.profile_prompt = "You are lazy.";
        ctx.backend = &backend;
        ctx.templates = &TemplateLibrary::builtin();
        ctx.sink = &sink;
        ctx.short_term = &stm;
        ctx.long_term = &ltm;
        auto answers = take_exam(ctx, exam, bank, {{0, "1"}, {1, "1"}, {2, "(none)"}});
        REQUIRE(answers.size() == exam.items.size());
        for (const auto& a : answers) CHECK(a.answer.empty());
        CHECK(sink.count("warning") == exam.items.size() / kBatchSize);
        CHECK(sink.count("answer_batch") == exam.items.size() / kBatchSize);
        // one try plus two repairs per batch
        CHECK(backend.requests.size() == 3 * exam.items.size() / kBatchSize);
        CHECK(stm.size() <= 3);
        // the template id and the repair instruction reach the backend
        CHECK(backend.requests[1].messages.back().content.find("could not be used") != std::string::npos);
    }
}
