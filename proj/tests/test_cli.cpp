#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

int run_count = 0;

RunResult run_shell(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), out};
}

RunResult run_cli(const std::string& args, const std::string& input = "",
                  const std::string& env = "") {
  std::string stdin_file = "/dev/null";
  if (!input.empty()) {
    stdin_file = "/tmp/pnv_cli_in_" + std::to_string(getpid()) + "_" +
                 std::to_string(run_count++);
    std::ofstream f(stdin_file, std::ios::binary);
    f << input;
  }
  return run_shell(env + std::string(PNVERIFY_BIN) + " " + args + " < " + stdin_file +
                   " 2>&1");
}

std::string fx(const std::string& name) { return std::string(FIXTURES_DIR) + "/" + name; }

std::string fixture_text(const std::string& name) {
  std::ifstream in(fx(name), std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing fixture ", name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/pnv_cli_" + name;
  std::ofstream f(path, std::ios::binary);
  f << content;
  return path;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

TEST_CASE("check lists one verdict per property and a tally") {
  RunResult r = run_cli("check " + fx("scenario.pn") + " " + fx("scenario.props"));
  CHECK(r.code == 0);
  CHECK(starts_with(r.out, "net: scenario\nstates: 36\nPASS deadlock_free: AG !deadlock\n"));
  CHECK(r.out.find("PASS idle_reachable: EF tokens(p2) = 1\n"
                   "  witness: error_action explain_speech_light ignore explain_speech_light "
                   "ignore explain_speech_light ignore switch_off\n"
                   "  final marking: {p2, attention, 3 counter}\n") != std::string::npos);
  CHECK(ends_with(r.out, "13/13 properties hold\n"));
}

TEST_CASE("check separates refuted from undecided in its exit code") {
  std::string props = write_temp("conf.props",
                                 "stuck_free: AG !deadlock\n"
                                 "can_p4: EF tokens(p4) = 1\n");

  RunResult fail = run_cli("check " + fx("conflict.pn") + " " + props);
  CHECK(fail.code == 1);
  CHECK(fail.out ==
        "net: conflict\n"
        "states: 5\n"
        "FAIL stuck_free: AG !deadlock\n"
        "  counterexample: t1 t3\n"
        "  final marking: {p4}\n"
        "PASS can_p4: EF tokens(p4) = 1\n"
        "  witness: t1 t3\n"
        "  final marking: {p4}\n"
        "1/2 properties hold\n");

  RunResult cut = run_cli("check --limit 3 " + fx("conflict.pn") + " " + props);
  CHECK(cut.code == 3);
  CHECK(cut.out ==
        "net: conflict\n"
        "states: 3 (truncated at limit 3)\n"
        "LIMIT stuck_free: AG !deadlock\n"
        "LIMIT can_p4: EF tokens(p4) = 1\n"
        "0/2 properties hold\n");

  RunResult quiet = run_cli("check --quiet " + fx("conflict.pn") + " " + props);
  CHECK(quiet.code == 1);
  CHECK(quiet.out.empty());
  CHECK(run_cli("check --quiet " + fx("scenario.pn") + " " + fx("scenario.props")).out.empty());
}

TEST_CASE("check json carries verdicts, traces and the tally") {
  std::string props = write_temp("conf.props",
                                 "stuck_free: AG !deadlock\n"
                                 "can_p4: EF tokens(p4) = 1\n");
  RunResult r = run_cli("check --json " + fx("conflict.pn") + " " + props);
  CHECK(r.code == 1);
  CHECK(r.out ==
        R"({"schema_version":1,"command":"check","net":"conflict","status":"complete",)"
        R"("states":5,"edges":4,"properties":[{"name":"stuck_free","formula":"AG !deadlock",)"
        R"("verdict":"refuted","trace":["t1","t3"],"final_marking":"{p4}"},)"
        R"({"name":"can_p4","formula":"EF tokens(p4) = 1","verdict":"holds",)"
        R"("trace":["t1","t3"],"final_marking":"{p4}"}],"holds":1,"refuted":1,"undecided":0})"
        "\n");

  RunResult again = run_cli("check --json " + fx("conflict.pn") + " " + props);
  CHECK(again.out == r.out);

  RunResult cut = run_cli("check --json --limit 3 " + fx("conflict.pn") + " " + props);
  CHECK(cut.code == 3);
  json j = json::parse(cut.out);
  CHECK(j["status"] == "truncated");
  CHECK(j["states"] == 3);
  CHECK(j["undecided"] == 2);
  CHECK(j["properties"][0]["verdict"] == "limit");
  CHECK(j["properties"][0]["trace"].is_null());

  json full = json::parse(run_cli("check --json " + fx("scenario.pn") + " " +
                                  fx("scenario.props"))
                              .out);
  CHECK(full["schema_version"] == 1);
  CHECK(full["command"] == "check");
  CHECK(full["status"] == "complete");
  CHECK(full["states"] == 36);
  CHECK(full["edges"] == 105);
  CHECK(full["properties"].size() == 13);
  CHECK(full["holds"] == 13);
  CHECK(full["refuted"] == 0);
}

TEST_CASE("missing and malformed inputs exit with code 2") {
  RunResult gone = run_cli("check nosuch.pn " + fx("scenario.props"));
  CHECK(gone.code == 2);
  CHECK(gone.out == "error: cannot open 'nosuch.pn'\n");

  std::string bad = write_temp("bad.pn", "net x {\n  places { p = ; }\n}");
  RunResult parse = run_cli("check " + bad + " " + fx("scenario.props"));
  CHECK(parse.code == 2);
  CHECK(parse.out ==
        "error: " + bad + ": line 2, column 16: expected an initial count, found ';'\n");

  std::string badp = write_temp("badp.props", "a: EF (\n");
  RunResult props = run_cli("check " + fx("conflict.pn") + " " + badp);
  CHECK(props.code == 2);
  CHECK(props.out == "error: " + badp + ": line 1, column 8: expected a formula\n");
}

TEST_CASE("the net can arrive on standard input") {
  std::string props = write_temp("ok.props", "ok: EF deadlock\n");
  RunResult r = run_cli("check - " + props, fixture_text("conflict.pn"));
  CHECK(r.code == 0);
  CHECK(r.out ==
        "net: conflict\n"
        "states: 5\n"
        "PASS ok: EF deadlock\n"
        "  witness: t1 t3\n"
        "  final marking: {p4}\n"
        "1/1 properties hold\n");
}

TEST_CASE("analyze prints the full report") {
  RunResult r = run_cli("analyze " + fx("conflict.pn"));
  CHECK(r.code == 0);
  CHECK(r.out ==
        "net: conflict\n"
        "states: 5\n"
        "edges: 4\n"
        "deadlocks: {p4} {p6}\n"
        "dead transitions: t4\n"
        "liveness:\n"
        "  t1: quasi-live\n"
        "  t2: quasi-live\n"
        "  t3: quasi-live\n"
        "  t4: dead\n"
        "  t5: quasi-live\n"
        "bounds:\n"
        "  p1: 1\n"
        "  p2: 1\n"
        "  p3: 1\n"
        "  p4: 1\n"
        "  p5: 0\n"
        "  p6: 1\n"
        "p-invariants:\n"
        "  p1 + p2 + p3 + p4 + 2 p5 + p6 = 1\n");

  RunResult j = run_cli("analyze --json " + fx("conflict.pn"));
  CHECK(j.code == 0);
  CHECK(j.out ==
        R"({"schema_version":1,"command":"analyze","net":"conflict","states":5,"edges":4,)"
        R"("deadlock_free":false,"deadlocks":["{p4}","{p6}"],"dead_transitions":["t4"],)"
        R"("liveness":{"t1":"quasi_live","t2":"quasi_live","t3":"quasi_live","t4":"dead",)"
        R"("t5":"quasi_live"},"bounds":{"p1":1,"p2":1,"p3":1,"p4":1,"p5":0,"p6":1},)"
        R"("p_invariants":[{"terms":{"p1":1,"p2":1,"p3":1,"p4":1,"p5":2,"p6":1},"constant":1}]})"
        "\n");

  json w = json::parse(run_cli("analyze --json " + fx("weighted.pn")).out);
  CHECK(w["states"] == 2);
  CHECK(w["edges"] == 1);
  CHECK(w["deadlock_free"] == false);
  CHECK(w["deadlocks"] == json::array({"{p0, 2 p2}"}));
  CHECK(w["dead_transitions"].empty());
  CHECK(w["liveness"]["t0"] == "quasi_live");
  CHECK(w["bounds"]["p0"] == 2);
  CHECK(w["bounds"]["p1"] == 3);
  CHECK(w["bounds"]["p2"] == 2);
  REQUIRE(w["p_invariants"].size() == 2);
  CHECK(w["p_invariants"][0]["terms"] == json({{"p0", 2}, {"p2", 1}}));
  CHECK(w["p_invariants"][0]["constant"] == 4);
  CHECK(w["p_invariants"][1]["terms"] == json({{"p1", 2}, {"p2", 3}}));
  CHECK(w["p_invariants"][1]["constant"] == 6);

  json f = json::parse(run_cli("analyze --json " + fx("fork_join.pn")).out);
  CHECK(f["deadlock_free"] == true);
  for (auto& [name, cls] : f["liveness"].items()) CHECK(cls == "live");
}

TEST_CASE("analyze needs the complete graph") {
  RunResult r = run_cli("analyze --limit 3 " + fx("conflict.pn"));
  CHECK(r.code == 3);
  CHECK(r.out ==
        "error: state limit (3) reached; analysis needs the complete reachability graph\n");

  CHECK(run_cli("analyze " + fx("conflict.pn"), "", "PNVERIFY_LIMIT=3 ").code == 3);
  CHECK(run_cli("analyze --limit 6 " + fx("conflict.pn"), "", "PNVERIFY_LIMIT=3 ").code == 0);

  RunResult env = run_cli("analyze " + fx("conflict.pn"), "", "PNVERIFY_LIMIT=abc ");
  CHECK(env.code == 2);
  CHECK(env.out == "error: PNVERIFY_LIMIT must be a positive integer, got 'abc'\n");
}

TEST_CASE("reach covers found, unreachable, limit and bad goals") {
  RunResult found = run_cli("reach " + fx("fork_join.pn") + " '{p6}'");
  CHECK(found.code == 0);
  CHECK(found.out ==
        "reachable in 4 steps\n"
        "witness: t1 t2 t3 t4\n"
        "final marking: {p6}\n");

  RunResult trivial = run_cli("reach " + fx("weighted.pn") + " '{2 p0, 3 p1}'");
  CHECK(trivial.code == 0);
  CHECK(trivial.out ==
        "reachable in 0 steps\n"
        "witness: (empty)\n"
        "final marking: {2 p0, 3 p1}\n");

  RunResult pred = run_cli("reach " + fx("conflict.pn") + " deadlock");
  CHECK(pred.code == 0);
  CHECK(pred.out ==
        "reachable in 2 steps\n"
        "witness: t1 t3\n"
        "final marking: {p4}\n");

  RunResult miss = run_cli("reach " + fx("conflict.pn") + " '{p5}'");
  CHECK(miss.code == 1);
  CHECK(miss.out == "unreachable\n");

  RunResult cut = run_cli("reach --limit 3 " + fx("conflict.pn") + " '{p4}'");
  CHECK(cut.code == 3);
  CHECK(cut.out == "state limit (3) reached; goal not found\n");

  RunResult temporal = run_cli("reach " + fx("conflict.pn") + " 'EF deadlock'");
  CHECK(temporal.code == 2);
  CHECK(temporal.out == "error: goal must be a marking literal or a temporal-free predicate\n");

  RunResult j = run_cli("reach --json " + fx("fork_join.pn") + " '{p6}'");
  CHECK(j.code == 0);
  CHECK(j.out ==
        R"({"schema_version":1,"command":"reach","net":"fork_join","goal":"{p6}",)"
        R"("outcome":"found","steps":4,"witness":["t1","t2","t3","t4"],"final_marking":"{p6}"})"
        "\n");

  RunResult jm = run_cli("reach --json " + fx("conflict.pn") + " '{p5}'");
  CHECK(jm.code == 1);
  CHECK(jm.out ==
        R"({"schema_version":1,"command":"reach","net":"conflict","goal":"{p5}",)"
        R"("outcome":"unreachable"})"
        "\n");

  RunResult jl = run_cli("reach --json --limit 3 " + fx("conflict.pn") + " '{p4}'");
  CHECK(jl.code == 3);
  CHECK(jl.out ==
        R"({"schema_version":1,"command":"reach","net":"conflict","goal":"{p4}",)"
        R"("outcome":"limit"})"
        "\n");
}

TEST_CASE("dot renders read arcs dashed and honours --marking") {
  RunResult r = run_cli("dot " + fx("read_arc.pn"));
  CHECK(r.code == 0);
  CHECK(r.out ==
        "digraph \"read_arc\" {\n"
        "  rankdir=LR;\n"
        "  \"p0\" [shape=circle, label=\"p0\\n1\"];\n"
        "  \"p1\" [shape=circle, label=\"p1\"];\n"
        "  \"p2\" [shape=circle, label=\"p2\\n1\"];\n"
        "  \"p3\" [shape=circle, label=\"p3\"];\n"
        "  \"t0\" [shape=box, label=\"t0\"];\n"
        "  \"t1\" [shape=box, label=\"t1\"];\n"
        "  \"t2\" [shape=box, label=\"t2\"];\n"
        "  \"p0\" -> \"t0\";\n"
        "  \"t0\" -> \"p1\";\n"
        "  \"p1\" -> \"t1\";\n"
        "  \"t1\" -> \"p0\";\n"
        "  \"p2\" -> \"t2\";\n"
        "  \"p1\" -> \"t2\" [style=dashed, arrowhead=none, dir=both, arrowtail=dot];\n"
        "  \"t2\" -> \"p3\";\n"
        "}\n");
  CHECK(run_cli("dot " + fx("read_arc.pn")).out == r.out);

  RunResult marked = run_cli("dot --marking '{p1, p3}' " + fx("read_arc.pn"));
  CHECK(marked.code == 0);
  CHECK(marked.out.find("\"p1\" [shape=circle, label=\"p1\\n1\"];") != std::string::npos);
  CHECK(marked.out.find("\"p0\" [shape=circle, label=\"p0\"];") != std::string::npos);

  RunResult bad = run_cli("dot --marking '{zz}' " + fx("read_arc.pn"));
  CHECK(bad.code == 2);
  CHECK(bad.out == "error: marking: line 1, column 2: unknown place 'zz'\n");
}

TEST_CASE("random walks are reproducible from the seed") {
  std::string args = "simulate --random --steps 5 --seed 7 " + fx("fork_join.pn");
  RunResult r = run_cli(args);
  CHECK(r.code == 0);
  CHECK(r.out ==
        "net: fork_join\n"
        "seed: 7\n"
        "{p1}\n"
        "fired t1 -> {p2, p3}\n"
        "fired t2 -> {p3, p4}\n"
        "fired t3 -> {p4, p5}\n"
        "fired t4 -> {p6}\n"
        "fired t5 -> {p1}\n");
  CHECK(run_cli(args).out == r.out);

  RunResult no_random = run_cli("simulate --steps 5 " + fx("fork_join.pn"));
  CHECK(no_random.code == 2);
  CHECK(no_random.out.find("--steps requires --random") != std::string::npos);
  RunResult no_steps = run_cli("simulate --random --seed 7 " + fx("fork_join.pn"));
  CHECK(no_steps.code == 2);
  CHECK(no_steps.out.find("--random requires --steps") != std::string::npos);

  RunResult stdin_net = run_cli("simulate --random --steps 3 --seed 1 -",
                                fixture_text("fork_join.pn"));
  CHECK(stdin_net.code == 2);
  CHECK(stdin_net.out ==
        "error: simulate reads commands from standard input; pass the net as a file\n");
}

TEST_CASE("the interactive loop fires, undoes and resets") {
  RunResult r = run_cli("simulate --seed 5 " + fx("fork_join.pn"),
                        "t1\n2\nauto 2\nundo\nreset\nbogus\n99\nhelp\nquit\n");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "net: fork_join\n"
        "seed: 5\n"
        "{p1}\n"
        "enabled: [0] t1\n"
        "> fired t1 -> {p2, p3}\n"
        "{p2, p3}\n"
        "enabled: [1] t2 [2] t3\n"
        "> fired t3 -> {p2, p5}\n"
        "{p2, p5}\n"
        "enabled: [1] t2\n"
        "> fired t2 -> {p4, p5}\n"
        "fired t4 -> {p6}\n"
        "{p6}\n"
        "enabled: [4] t5\n"
        "> {p4, p5}\n"
        "enabled: [3] t4\n"
        "> {p1}\n"
        "enabled: [0] t1\n"
        "> unknown transition 'bogus'\n"
        "{p1}\n"
        "enabled: [0] t1\n"
        "> unknown transition '99'\n"
        "{p1}\n"
        "enabled: [0] t1\n"
        "> commands: <transition name or number>, auto K, undo, reset, help, quit\n"
        "{p1}\n"
        "enabled: [0] t1\n"
        "> ");

  RunResult edge = run_cli("simulate --seed 1 " + fx("weighted.pn"), "undo\nt0\nquit\n");
  CHECK(edge.code == 0);
  CHECK(edge.out ==
        "net: weighted\n"
        "seed: 1\n"
        "{2 p0, 3 p1}\n"
        "enabled: [0] t0\n"
        "> nothing to undo\n"
        "{2 p0, 3 p1}\n"
        "enabled: [0] t0\n"
        "> fired t0 -> {p0, 2 p2}\n"
        "{p0, 2 p2}\n"
        "deadlock: no enabled transitions\n"
        "> ");

  RunResult eof = run_cli("simulate --seed 1 " + fx("weighted.pn"), "t0\n");
  CHECK(eof.code == 0);
  CHECK(ends_with(eof.out, "deadlock: no enabled transitions\n> "));
}

TEST_CASE("scenario emits the frozen net and property files") {
  RunResult net = run_cli("scenario --emit net");
  CHECK(net.code == 0);
  CHECK(net.out == fixture_text("scenario.pn"));

  RunResult props = run_cli("scenario --emit props");
  CHECK(props.code == 0);
  CHECK(props.out == fixture_text("scenario.props"));

  RunResult other = run_cli("scenario --context no_attention --budget 2 --emit net");
  CHECK(other.code == 0);
  CHECK(other.out.find("no_attention = 1;") != std::string::npos);
  CHECK(other.out.find("counter = 2;") != std::string::npos);

  RunResult pipeline = run_shell(std::string(PNVERIFY_BIN) +
                                 " scenario --context not_present --emit net | " +
                                 PNVERIFY_BIN + " check --quiet - " + fx("scenario.props"));
  CHECK(pipeline.code == 0);
  CHECK(pipeline.out.empty());

  RunResult bad_context = run_cli("scenario --context nope --emit net");
  CHECK(bad_context.code == 2);
  CHECK(bad_context.out ==
        "error: unknown context 'nope' (expected attention, no_attention or not_present)\n");
  CHECK(run_cli("scenario --emit nets").code == 2);
  RunResult zero = run_cli("scenario --budget 0 --emit net");
  CHECK(zero.code == 2);
  CHECK(zero.out == "error: explanation budget must be at least 1\n");
}

TEST_CASE("help and usage errors") {
  RunResult help = run_cli("--help");
  CHECK(help.code == 0);
  for (const char* sub : {"check", "analyze", "reach", "dot", "simulate", "scenario"})
    CHECK(help.out.find(sub) != std::string::npos);

  CHECK(run_cli("").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("check").code == 2);
}
