#include "hypermon/harness.hpp"

#include "hypermon/interpreter.hpp"
#include "hypermon/random.hpp"
#include "hypermon/symexec.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace hypermon {

FunctionGraph::FunctionGraph(std::string method, Domains domains)
    : method_(std::move(method)), domains_(std::move(domains)) {
  std::size_t total = 1;
  for (const auto& d : domains_) {
    if (!d.finite()) throw DomainError("function graph needs finite domains, got " + d.str());
    sizes_.push_back(d.size().convert_to<std::size_t>());
    total *= sizes_.back();
  }
  outputs_.resize(total);
}

std::size_t FunctionGraph::index(const std::vector<Integer>& tuple) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < sizes_.size(); ++k)
    idx = idx * sizes_[k] + Integer(tuple[k] - *domains_[k].lo).convert_to<std::size_t>();
  return idx;
}

std::vector<Integer> FunctionGraph::tuple(std::size_t index) const {
  std::vector<Integer> t(sizes_.size());
  for (std::size_t k = sizes_.size(); k > 0; --k) {
    t[k - 1] = *domains_[k - 1].lo + Integer(index % sizes_[k - 1]);
    index /= sizes_[k - 1];
  }
  return t;
}

bool FunctionGraph::inBox(const std::vector<Integer>& tuple) const {
  if (tuple.size() != domains_.size()) return false;
  for (std::size_t k = 0; k < tuple.size(); ++k)
    if (!domains_[k].contains(tuple[k])) return false;
  return true;
}

std::optional<Integer> FunctionGraph::at(const std::vector<Integer>& tuple) const {
  if (!inBox(tuple)) return std::nullopt;
  return outputs_[index(tuple)];
}

void FunctionGraph::set(std::size_t index, Integer output) {
  if (!outputs_[index]) ++defined_;
  outputs_[index] = std::move(output);
}

std::vector<IoPair> FunctionGraph::entries() const {
  std::vector<IoPair> out;
  out.reserve(defined_);
  for (std::size_t idx = 0; idx < outputs_.size(); ++idx)
    if (outputs_[idx]) out.push_back({tuple(idx), *outputs_[idx]});
  return out;
}

FunctionGraph enumerateGraph(const lang::Program& program, const std::string& method, const Domains& domains,
                             std::uint64_t bound) {
  const lang::MethodDef& m = program.method(method);
  if (domains.size() != m.arity()) throw DomainError("domain count does not match the arity of '" + method + "'");
  if (!allFinite(domains)) throw DomainError("cannot enumerate '" + method + "' over unbounded domains");
  if (productSize(domains) > bound)
    throw DomainError("domain of '" + method + "' exceeds the enumeration bound of " + std::to_string(bound));
  FunctionGraph g(method, domains);
  for (std::size_t idx = 0; idx < g.boxSize(); ++idx) {
    const std::vector<Integer> t = g.tuple(idx);
    if (!lang::satisfiesPreconditions(program, m, t)) continue;
    g.set(idx, lang::evalMethod(program, m, t));
  }
  return g;
}

std::vector<std::vector<Integer>> positionKernel(const FunctionGraph& graph, std::size_t i) {
  if (i < 1 || i > graph.arity()) throw std::out_of_range("position out of range");
  const Interval& d = graph.domains()[i - 1];
  std::size_t size = 0, stride = 1;
  for (std::size_t k = graph.arity(); k > 0; --k) {
    const std::size_t width = graph.domains()[k - 1].size().convert_to<std::size_t>();
    if (k == i) {
      size = width;
      break;
    }
    stride *= width;
  }
  // Signature of a value: the outputs over all completions, in index order.
  std::map<std::vector<std::optional<Integer>>, std::vector<Integer>> classes;
  for (std::size_t off = 0; off < size; ++off) {
    std::vector<std::optional<Integer>> sig;
    for (std::size_t idx = 0; idx < graph.boxSize(); ++idx)
      if ((idx / stride) % size == 0) sig.push_back(graph.at(idx + off * stride));
    classes[sig].push_back(*d.lo + off);
  }
  std::vector<std::vector<Integer>> out;
  for (auto& [sig, cls] : classes) out.push_back(std::move(cls));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

bool isDdm(const FunctionGraph& graph) {
  for (std::size_t i = 1; i <= graph.arity(); ++i)
    for (const auto& cls : positionKernel(graph, i))
      if (cls.size() > 1) return false;
  return true;
}

Preprocessor::Preprocessor(const FunctionGraph& graph, MinimizerKind kind) : graph_(&graph), kind_(kind) {
  if (kind == MinimizerKind::Distributed) {
    for (std::size_t i = 1; i <= graph.arity(); ++i) {
      std::map<Integer, Integer> map;
      for (const auto& cls : positionKernel(graph, i))
        for (const auto& v : cls) map[v] = cls.front();
      positions_.push_back(std::move(map));
    }
  } else {
    // Index order is lexicographic order, so the first tuple per output is the minimum.
    for (std::size_t idx = 0; idx < graph.boxSize(); ++idx)
      if (const auto& out = graph.at(idx)) byOutput_.emplace(*out, idx);
  }
}

std::vector<Integer> Preprocessor::apply(const std::vector<Integer>& tuple) const {
  if (kind_ == MinimizerKind::Distributed) {
    std::vector<Integer> out(tuple.size());
    for (std::size_t k = 0; k < tuple.size(); ++k) out[k] = component(k + 1, tuple[k]);
    return out;
  }
  const auto out = graph_->at(tuple);
  if (!out) throw DomainError("tuple " + formatTuple(tuple) + " is outside the function graph");
  return graph_->tuple(byOutput_.at(*out));
}

const Integer& Preprocessor::component(std::size_t i, const Integer& value) const {
  if (kind_ != MinimizerKind::Distributed) throw ContractError("component() needs a distributed minimizer");
  const auto& map = positions_.at(i - 1);
  auto it = map.find(value);
  if (it == map.end()) throw DomainError("value " + value.str() + " outside the domain of position " + std::to_string(i));
  return it->second;
}

Preprocessor buildMinimizer(const FunctionGraph& graph, MinimizerKind kind) { return Preprocessor(graph, kind); }

std::string_view toString(TraceKind k) {
  switch (k) {
    case TraceKind::K1: return "K1";
    case TraceKind::K2: return "K2";
    case TraceKind::K3: return "K3";
  }
  return "K1";
}

std::optional<TraceKind> parseTraceKind(std::string_view text) {
  if (text == "K1" || text == "k1") return TraceKind::K1;
  if (text == "K2" || text == "k2") return TraceKind::K2;
  if (text == "K3" || text == "k3") return TraceKind::K3;
  return std::nullopt;
}

std::vector<IoPair> genTraces(const FunctionGraph& graph, TraceKind kind, std::size_t count, std::uint64_t seed) {
  if (graph.size() == 0) throw DomainError("'" + graph.method() + "' has no inputs in its domain");
  Rng rng(mixSeed({seed, nameHash(graph.method())}));
  std::optional<Preprocessor> p;
  if (kind == TraceKind::K2) p.emplace(graph, MinimizerKind::Distributed);
  if (kind == TraceKind::K3) p.emplace(graph, MinimizerKind::Monolithic);
  std::vector<IoPair> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::size_t idx = uniformIndex(rng, graph.boxSize());
    if (!graph.at(idx)) continue;  // rejected by the requires clause
    std::vector<Integer> t = graph.tuple(idx);
    if (p) t = p->apply(t);
    const auto y = graph.at(t);
    if (!y) throw DomainError("minimizer left the domain of '" + graph.method() + "'");
    out.push_back({std::move(t), *y});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Benchmark

std::size_t BenchmarkCell::count(Verdict3 v) const { return std::count(verdicts.begin(), verdicts.end(), v); }

Verdict3 BenchmarkCell::majority() const {
  const std::size_t b = count(Verdict3::Bottom), u = count(Verdict3::Unknown), t = count(Verdict3::Top);
  if (b >= u && b >= t) return Verdict3::Bottom;
  return u >= t ? Verdict3::Unknown : Verdict3::Top;
}

double BenchmarkCell::mean() const {
  if (seconds.empty()) return 0;
  double s = 0;
  for (double x : seconds) s += x;
  return s / static_cast<double>(seconds.size());
}

double BenchmarkCell::stddev() const {
  if (seconds.size() < 2) return 0;
  const double m = mean();
  double s = 0;
  for (double x : seconds) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(seconds.size() - 1));
}

const BenchmarkCell* BenchmarkTable::find(const std::string& label, TraceKind kind, Strategy strategy) const {
  for (const auto& c : cells)
    if (c.label == label && c.kind == kind && c.strategy == strategy) return &c;
  return nullptr;
}

namespace {

std::string verdictSymbol(Verdict3 v) {
  switch (v) {
    case Verdict3::Top: return "TOP";
    case Verdict3::Bottom: return "BOTTOM";
    case Verdict3::Unknown: return "?";
  }
  return "?";
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

std::string BenchmarkTable::text() const {
  // Rows keyed by (label, kind) in first-seen order.
  std::vector<std::pair<std::string, TraceKind>> rows;
  std::vector<Strategy> strategies;
  for (const auto& c : cells) {
    if (std::find(rows.begin(), rows.end(), std::make_pair(c.label, c.kind)) == rows.end())
      rows.emplace_back(c.label, c.kind);
    if (std::find(strategies.begin(), strategies.end(), c.strategy) == strategies.end())
      strategies.push_back(c.strategy);
  }
  std::ostringstream os;
  os << std::left << std::setw(10) << "program" << std::setw(6) << "kind";
  for (Strategy s : strategies)
    os << std::setw(16) << (std::string(toString(s)) + " verdict") << std::setw(12) << "mean s" << std::setw(12)
       << "stddev";
  os << "\n";
  for (const auto& [label, kind] : rows) {
    os << std::setw(10) << label << std::setw(6) << toString(kind);
    for (Strategy s : strategies) {
      const BenchmarkCell* c = find(label, kind, s);
      if (!c) {
        os << std::setw(40) << "-";
        continue;
      }
      const Verdict3 m = c->majority();
      os << std::setw(16) << (verdictSymbol(m) + " (" + std::to_string(c->count(m)) + "/" +
                              std::to_string(c->verdicts.size()) + ")")
         << std::setw(12) << fixed(c->mean(), 4) << std::setw(12) << fixed(c->stddev(), 4);
    }
    os << "\n";
  }
  return os.str();
}

std::string BenchmarkTable::csv(bool timings) const {
  std::ostringstream os;
  os << "program,kind,strategy,verdict,bottom,unknown,top,instances" << (timings ? ",mean_s,stddev_s" : "") << "\n";
  for (const auto& c : cells) {
    os << c.label << "," << toString(c.kind) << "," << toString(c.strategy) << "," << toString(c.majority()) << ","
       << c.count(Verdict3::Bottom) << "," << c.count(Verdict3::Unknown) << "," << c.count(Verdict3::Top) << ","
       << c.verdicts.size();
    if (timings) os << "," << fixed(c.mean(), 6) << "," << fixed(c.stddev(), 6);
    os << "\n";
  }
  return os.str();
}

std::uint64_t instanceSeed(std::uint64_t seed, std::size_t instance) { return mixSeed({seed, instance}); }

BenchmarkTable runBenchmark(const std::vector<BenchmarkProgram>& programs, const BenchmarkOptions& options) {
  BenchmarkTable table;
  for (const auto& bp : programs) {
    auto c = std::make_shared<sym::Characterization>(sym::symexecMethod(*bp.program, bp.method));
    auto graph = std::make_shared<const FunctionGraph>(enumerateGraph(*bp.program, bp.method, c->domains));
    std::shared_ptr<const sym::Characterization> chr = c;
    for (TraceKind kind : options.kinds) {
      std::vector<std::vector<IoPair>> instances;
      for (std::size_t k = 0; k < options.instances; ++k)
        instances.push_back(genTraces(*graph, kind, options.traces, instanceSeed(options.seed, k)));
      for (Strategy strategy : options.strategies) {
        BenchmarkCell cell{bp.label, kind, strategy, {}, {}, {}};
        for (const auto& traces : instances) {
          const auto start = std::chrono::steady_clock::now();
          auto oracle = std::make_shared<Oracle>(bp.program, chr, options.oracle, graph);
          Monitor monitor(bp.program, bp.method, {Property::Ddm, strategy}, oracle);
          int line = 0;
          for (const auto& t : traces) monitor.ingest(t, ++line);
          const auto stop = std::chrono::steady_clock::now();
          cell.verdicts.push_back(monitor.verdict());
          cell.witnesses.push_back(monitor.witness());
          cell.seconds.push_back(std::chrono::duration<double>(stop - start).count());
        }
        table.cells.push_back(std::move(cell));
      }
    }
  }
  return table;
}

}  // namespace hypermon
