// Command-line front end: monitor traces, classify predicates, generate
// traces, run the verdict benchmark and dump characterizations.
//
// Exit status: 0 when the final monitor verdict is UNKNOWN (and for every
// successful non-monitor command), 2 when it is BOTTOM, 1 on any error.

#include "hypermon/domain.hpp"
#include "hypermon/harness.hpp"
#include "hypermon/hypertheory.hpp"
#include "hypermon/monitor.hpp"
#include "hypermon/parser.hpp"
#include "hypermon/symexec.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

namespace {

using namespace hypermon;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBottom = 2;

enum class Format { Text, Csv, JsonLines };

const std::map<std::string, Format> kFormats{
    {"text", Format::Text}, {"csv", Format::Csv}, {"json-lines", Format::JsonLines}};

struct ProgramOptions {
  std::string programPath;
  std::string method;
  std::vector<std::string> domainOverrides;
  int unroll = 8;
  bool useInvariants = false;
  std::uint64_t seed = 1;
};

struct OracleOptions {
  std::string backend = "auto";
  std::string solver;
  std::uint64_t bruteBound = 10'000'000;
};

struct Loaded {
  std::shared_ptr<const lang::Program> program;
  std::string method;
  Domains domains;
};

Interval parseRange(const std::string& text, std::string& name) {
  static const std::regex pattern(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern))
    throw ConfigError("malformed --domain '" + text + "', expected name=lo..hi");
  name = m[1];
  return Interval::closed(Integer(m[2].str()), Integer(m[3].str()));
}

Loaded load(const ProgramOptions& opts) {
  Loaded out;
  out.program = std::make_shared<const lang::Program>(lang::loadProgram(opts.programPath));
  out.method = opts.method.empty() ? out.program->defaultEntry() : opts.method;
  const lang::MethodDef& def = out.program->method(out.method);
  try {
    out.domains = lang::inputDomain(def);
  } catch (const DomainError&) {
    out.domains.assign(def.arity(), Interval::unbounded());
  }
  std::vector<std::pair<std::string, Interval>> overrides;
  for (const auto& text : opts.domainOverrides) {
    std::string name;
    const Interval range = parseRange(text, name);
    overrides.emplace_back(name, range);
  }
  out.domains = lang::withOverrides(def, out.domains, overrides);
  return out;
}

sym::SymexecConfig symexecConfig(const ProgramOptions& opts, const Domains& domains) {
  sym::SymexecConfig config;
  config.unrollDepth = opts.unroll;
  config.useInvariants = opts.useInvariants;
  config.seed = opts.seed;
  config.domains = domains;
  return config;
}

OracleConfig oracleConfig(const OracleOptions& opts) {
  OracleConfig config;
  const auto backend = parseBackend(opts.backend);
  if (!backend) throw ConfigError("unknown backend '" + opts.backend + "'");
  config.backend = *backend;
  config.bruteBound = opts.bruteBound;
  if (!opts.solver.empty()) config.solver.command = opts.solver;
  return config;
}

std::unique_ptr<std::ifstream> openInput(const std::string& path, std::istream*& in) {
  if (path == "-") {
    in = &std::cin;
    return nullptr;
  }
  auto file = std::make_unique<std::ifstream>(path);
  if (!*file) throw Error("cannot open '" + path + "'");
  in = file.get();
  return file;
}

json tupleJson(const std::vector<Integer>& tuple) {
  json out = json::array();
  for (const auto& v : tuple) out.push_back(v.str());
  return out;
}

std::string csvField(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

// ---------------------------------------------------------------------------
// monitor

struct MonitorOptions {
  std::string property = "ddm";
  std::string strategy = "eager";
  std::string traces = "-";
  std::string format = "text";
  bool strict = false;
};

int runMonitor(const ProgramOptions& popts, const OracleOptions& oopts, const MonitorOptions& mopts) {
  const Loaded loaded = load(popts);
  MonitorConfig config;
  const auto property = parseProperty(mopts.property);
  if (!property) throw ConfigError("unknown property '" + mopts.property + "'");
  const auto strategy = parseStrategy(mopts.strategy);
  if (!strategy) throw ConfigError("unknown strategy '" + mopts.strategy + "'");
  config.property = *property;
  config.strategy = *strategy;
  config.strict = mopts.strict;
  const Format format = kFormats.at(mopts.format);

  std::shared_ptr<Oracle> oracle;
  if (config.property == Property::Ddm) {
    const OracleConfig ocfg = oracleConfig(oopts);
    if (ocfg.backend == Backend::Smt) smt::check("(check-sat)\n", ocfg.solver);  // launch probe
    auto c = std::make_shared<const sym::Characterization>(
        sym::symexecMethod(*loaded.program, loaded.method, symexecConfig(popts, loaded.domains)));
    std::shared_ptr<const FunctionGraph> graph;
    const bool brute = ocfg.backend == Backend::Auto || ocfg.backend == Backend::Brute;
    if (brute && allFinite(loaded.domains) && productSize(loaded.domains) <= 2'000'000)
      graph = std::make_shared<const FunctionGraph>(enumerateGraph(*loaded.program, loaded.method, loaded.domains));
    oracle = std::make_shared<Oracle>(loaded.program, c, ocfg, graph);
  }
  Monitor monitor(loaded.program, loaded.method, config, oracle);

  std::istream* in = nullptr;
  const auto file = openInput(mopts.traces, in);
  TraceReader reader(*in, loaded.program->method(loaded.method).arity(), true);

  std::ostream& out = std::cout;
  if (format == Format::Csv) out << "line,verdict,witness,duplicate,inconsistent,diagnostic\n";
  std::size_t lines = 0;
  while (auto line = reader.next()) {
    ++lines;
    const LineReport report = monitor.ingest(line->pair, line->lineNumber);
    switch (format) {
      case Format::Text:
        out << report.str() << "\n";
        break;
      case Format::Csv:
        out << report.line << "," << toString(report.verdict) << ","
            << csvField(report.witness ? report.witness->str() : "") << "," << (report.duplicate ? 1 : 0) << ","
            << (report.inconsistent ? 1 : 0) << "," << csvField(report.diagnostic) << "\n";
        break;
      case Format::JsonLines: {
        json j{{"line", report.line}, {"verdict", std::string(toString(report.verdict))}};
        if (report.witness) {
          json w{{"x", tupleJson(report.witness->x)}, {"y", tupleJson(report.witness->y)}};
          if (report.witness->position) w["position"] = report.witness->position;
          j["witness"] = w;
        }
        if (report.duplicate) j["duplicate"] = true;
        if (report.inconsistent) j["inconsistent"] = true;
        if (!report.diagnostic.empty()) j["diagnostic"] = report.diagnostic;
        out << j.dump() << "\n";
        break;
      }
    }
  }

  const Verdict3 verdict = monitor.verdict();
  const std::size_t queries = oracle ? oracle->queries() : 0;
  const std::size_t calls = oracle ? oracle->backendCalls() : 0;
  const std::size_t hits = oracle ? oracle->cacheHits() : 0;
  if (format == Format::JsonLines) {
    json j{{"final", std::string(toString(verdict))},
           {"lines", lines},
           {"traces", monitor.observation().size()},
           {"inconsistent", monitor.inconsistentCount()},
           {"oracle_queries", queries},
           {"backend_calls", calls},
           {"cache_hits", hits}};
    if (monitor.witness()) j["witness"] = monitor.witness()->str();
    out << j.dump() << "\n";
  } else if (format == Format::Text) {
    out << "final: verdict=" << toString(verdict) << " lines=" << lines
        << " traces=" << monitor.observation().size() << " inconsistent=" << monitor.inconsistentCount()
        << " oracle_queries=" << queries << " backend_calls=" << calls << " cache_hits=" << hits << "\n";
  }
  for (const auto& d : monitor.diagnostics()) std::cerr << "diagnostic: " << d << "\n";
  return verdict == Verdict3::Bottom ? kExitBottom : kExitOk;
}

// ---------------------------------------------------------------------------
// classify

std::vector<std::string> splitAtoms(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ConfigError("empty atom name in --ap");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

int runClassify(const std::string& ap, const std::string& pred, const std::string& formatName) {
  const auto f = hyper::StatePredicate::parse(pred, splitAtoms(ap));
  const auto v = hyper::classify(f);
  const auto letter = [&](const std::optional<hyper::Letter>& l) {
    return l ? hyper::formatLetter(*l, f.atoms()) : std::string();
  };
  if (kFormats.at(formatName) == Format::JsonLines) {
    json j{{"predicate", f.str()},
           {"verdict", std::string(toString(v.classification))},
           {"reflexive", v.reflexive},
           {"serial", v.serial},
           {"evidence", std::string(toString(v.evidence))}};
    if (v.falsifying) j["falsifying"] = letter(v.falsifying);
    if (v.irreflexive) j["irreflexive"] = letter(v.irreflexive);
    std::cout << j.dump() << "\n";
    return kExitOk;
  }
  std::cout << "predicate: " << f.str() << "\n"
            << "verdict: " << toString(v.classification) << "\n"
            << "reflexive: " << (v.reflexive ? "true" : "false");
  if (v.irreflexive) std::cout << " (F(v, v) fails for v=" << letter(v.irreflexive) << ")";
  std::cout << "\nserial: " << (v.serial ? "true" : "false");
  if (v.falsifying) std::cout << " (no v' satisfies F(v, v') for v=" << letter(v.falsifying) << ")";
  std::cout << "\nevidence: " << toString(v.evidence);
  switch (v.evidence) {
    case hyper::Evidence::Reflexive:
      std::cout << " (pairing every trace with itself satisfies F at every step)";
      break;
    case hyper::Evidence::NonSerial:
      std::cout << " (extending any trace by " << letter(v.falsifying) << " violates permanently)";
      break;
    case hyper::Evidence::None:
      break;
  }
  std::cout << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// gen

int runGen(const ProgramOptions& popts, const std::string& kindName, std::size_t count, const std::string& output) {
  const Loaded loaded = load(popts);
  const auto kind = parseTraceKind(kindName);
  if (!kind) throw ConfigError("unknown trace kind '" + kindName + "'");
  const FunctionGraph graph = enumerateGraph(*loaded.program, loaded.method, loaded.domains);
  const auto traces = genTraces(graph, *kind, count, popts.seed);
  if (output.empty() || output == "-") {
    writeCsv(std::cout, traces);
  } else {
    std::ofstream file(output);
    if (!file) throw Error("cannot write '" + output + "'");
    writeCsv(file, traces);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::vector<std::string> targets;
  std::vector<std::string> kinds{"K1", "K2", "K3"};
  std::vector<std::string> strategies{"eager", "lazy"};
  std::size_t instances = 10;
  std::size_t traces = 100;
  std::string format = "text";
  bool noTimings = false;
};

int runBench(const BenchOptions& bopts, const OracleOptions& oopts, std::uint64_t seed) {
  static const std::regex pattern(R"(^([^=]+)=([^:]+):([A-Za-z_][A-Za-z0-9_]*)$)");
  std::vector<BenchmarkProgram> programs;
  for (const auto& target : bopts.targets) {
    std::smatch m;
    if (!std::regex_match(target, m, pattern))
      throw ConfigError("malformed --target '" + target + "', expected LABEL=PATH:METHOD");
    auto program = std::make_shared<const lang::Program>(lang::loadProgram(m[2]));
    program->method(m[3]);
    programs.push_back({m[1], program, m[3]});
  }
  BenchmarkOptions options;
  options.kinds.clear();
  for (const auto& k : bopts.kinds) {
    const auto kind = parseTraceKind(k);
    if (!kind) throw ConfigError("unknown trace kind '" + k + "'");
    options.kinds.push_back(*kind);
  }
  options.strategies.clear();
  for (const auto& s : bopts.strategies) {
    const auto strategy = parseStrategy(s);
    if (!strategy) throw ConfigError("unknown strategy '" + s + "'");
    options.strategies.push_back(*strategy);
  }
  options.instances = bopts.instances;
  options.traces = bopts.traces;
  options.seed = seed;
  options.oracle = oracleConfig(oopts);
  const BenchmarkTable table = runBenchmark(programs, options);
  std::cout << (kFormats.at(bopts.format) == Format::Csv ? table.csv(!bopts.noTimings) : table.text());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// symexec

int runSymexec(const ProgramOptions& popts, const std::string& format, std::size_t validate) {
  const Loaded loaded = load(popts);
  const auto c = sym::symexecMethod(*loaded.program, loaded.method, symexecConfig(popts, loaded.domains));
  std::cout << (format == "smt" ? sym::dumpSmt(c) : sym::dumpText(c));
  if (validate > 0) {
    const auto report = sym::validateCharacterization(c, *loaded.program, validate, popts.seed);
    std::cout << "validation: samples=" << report.samples << " havoc_hits=" << report.havocHits
              << " overlaps=" << report.count(sym::ValidationIssue::Kind::Overlap)
              << " gaps=" << report.count(sym::ValidationIssue::Kind::Gap)
              << " disagreements=" << report.count(sym::ValidationIssue::Kind::Disagreement)
              << " undecided=" << report.count(sym::ValidationIssue::Kind::Undecided) << "\n";
    for (const auto& issue : report.issues) std::cout << "  " << formatTuple(issue.input) << ": " << issue.detail << "\n";
    return report.ok() ? kExitOk : kExitError;
  }
  return kExitOk;
}

void addProgramOptions(CLI::App* cmd, ProgramOptions& opts, bool required = true) {
  auto* program = cmd->add_option("--program", opts.programPath, "Program source file");
  if (required) program->required()->check(CLI::ExistingFile);
  cmd->add_option("--method", opts.method, "Monitored method (default: last method in the file)");
  cmd->add_option("--domain", opts.domainOverrides, "Input range override, name=lo..hi (repeatable)");
  cmd->add_option("--unroll", opts.unroll, "Loop unrolling depth for symbolic execution")->capture_default_str();
  cmd->add_flag("--use-invariants", opts.useInvariants, "Summarize annotated loops by their invariant");
  cmd->add_option("--seed", opts.seed, "Seed for sampling and trace generation")->capture_default_str();
}

void addOracleOptions(CLI::App* cmd, OracleOptions& opts) {
  cmd->add_option("--backend", opts.backend, "Oracle backend")
      ->check(CLI::IsMember({"auto", "brute", "symbolic", "smt"}))
      ->capture_default_str();
  cmd->add_option("--solver", opts.solver, "SMT solver command (default: $HYPERMON_SOLVER or 'z3 -in')");
  cmd->add_option("--brute-bound", opts.bruteBound, "Largest completion space enumerated by brute force")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gray-box monitor for distributed and monolithic data minimality"};
  app.require_subcommand(1);

  ProgramOptions popts;
  OracleOptions oopts;
  MonitorOptions mopts;
  auto* monitor = app.add_subcommand("monitor", "Ingest traces and report a verdict after every line");
  addProgramOptions(monitor, popts);
  addOracleOptions(monitor, oopts);
  monitor->add_option("--property", mopts.property, "ddm or mdm")
      ->check(CLI::IsMember({"ddm", "mdm"}))
      ->capture_default_str();
  monitor->add_option("--strategy", mopts.strategy, "eager or lazy")
      ->check(CLI::IsMember({"eager", "lazy"}))
      ->capture_default_str();
  monitor->add_option("--traces", mopts.traces, "CSV trace file, or - for stdin")->capture_default_str();
  monitor->add_option("--format", mopts.format, "text, csv or json-lines")
      ->check(CLI::IsMember({"text", "csv", "json-lines"}))
      ->capture_default_str();
  monitor->add_flag("--strict", mopts.strict, "Treat traces that disagree with the program as fatal");

  std::string ap, pred, classifyFormat = "text";
  auto* classify = app.add_subcommand("classify", "Decide monitorability of forall-exists always F");
  classify->add_option("--ap", ap, "Comma-separated atomic propositions")->required();
  classify->add_option("--pred", pred, "State predicate over a@1 / a@2")->required();
  classify->add_option("--format", classifyFormat, "text or json-lines")
      ->check(CLI::IsMember({"text", "json-lines"}))
      ->capture_default_str();

  ProgramOptions gopts;
  std::string kind = "K1", output;
  std::size_t count = 100;
  auto* gen = app.add_subcommand("gen", "Generate random traces from the function graph");
  addProgramOptions(gen, gopts);
  gen->add_option("--kind", kind, "K1 (raw), K2 (distributed-minimized) or K3 (monolithic-minimized)")
      ->check(CLI::IsMember({"K1", "K2", "K3"}))
      ->capture_default_str();
  gen->add_option("--count", count, "Number of traces")->capture_default_str();
  gen->add_option("--output", output, "Output file (default stdout)");

  BenchOptions bopts;
  OracleOptions boracle;
  std::uint64_t benchSeed = 1;
  auto* bench = app.add_subcommand("bench", "Verdict table over generated trace sets");
  bench->add_option("--target", bopts.targets, "Benchmark program, LABEL=PATH:METHOD (repeatable)")->required();
  bench->add_option("--kinds", bopts.kinds, "Trace kinds")->delimiter(',')->capture_default_str();
  bench->add_option("--strategies", bopts.strategies, "Strategies")->delimiter(',')->capture_default_str();
  bench->add_option("--instances", bopts.instances, "Instances per cell")->capture_default_str();
  bench->add_option("--traces", bopts.traces, "Traces per instance")->capture_default_str();
  bench->add_option("--seed", benchSeed, "Base seed")->capture_default_str();
  bench->add_option("--format", bopts.format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();
  bench->add_flag("--no-timings", bopts.noTimings, "Omit timing columns from CSV output");
  addOracleOptions(bench, boracle);

  ProgramOptions sopts;
  std::string symFormat = "text";
  std::size_t validate = 0;
  auto* symexec = app.add_subcommand("symexec", "Dump the symbolic characterization of a method");
  addProgramOptions(symexec, sopts);
  symexec->add_option("--format", symFormat, "text or smt")
      ->check(CLI::IsMember({"text", "smt"}))
      ->capture_default_str();
  symexec->add_option("--validate", validate, "Check the characterization on this many sampled inputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*monitor) return runMonitor(popts, oopts, mopts);
    if (*classify) return runClassify(ap, pred, classifyFormat);
    if (*gen) return runGen(gopts, kind, count, output);
    if (*bench) return runBench(bopts, boracle, benchSeed);
    if (*symexec) return runSymexec(sopts, symFormat, validate);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
