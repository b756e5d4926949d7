// Python bindings. Integers cross the boundary as Python ints (via their
// decimal text), verdicts and enum options as lowercase/uppercase strings.

#include "hypermon/domain.hpp"
#include "hypermon/harness.hpp"
#include "hypermon/hypertheory.hpp"
#include "hypermon/interpreter.hpp"
#include "hypermon/monitor.hpp"
#include "hypermon/oracle.hpp"
#include "hypermon/parser.hpp"
#include "hypermon/symexec.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hypermon;

namespace {

using ProgramPtr = std::shared_ptr<lang::Program>;

py::int_ toPy(const Integer& v) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(v.str().c_str(), nullptr, 10))); }

Integer fromPy(const py::handle& h) {
  if (!py::isinstance<py::int_>(h)) throw py::type_error("expected int");
  return Integer(py::str(h).cast<std::string>());
}

std::vector<Integer> tupleFromPy(const py::iterable& items) {
  std::vector<Integer> out;
  for (auto item : items) out.push_back(fromPy(item));
  return out;
}

py::tuple tupleToPy(const std::vector<Integer>& values) {
  py::tuple out(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) out[k] = toPy(values[k]);
  return out;
}

template <class T, class Parse>
T option(const std::string& text, Parse parse, const char* what) {
  const auto v = parse(text);
  if (!v) throw ConfigError(std::string("unknown ") + what + " '" + text + "'");
  return *v;
}

std::string verdictName(Verdict3 v) { return std::string(toString(v)); }

py::object witnessToPy(const std::optional<Witness>& w) {
  if (!w) return py::none();
  py::dict d;
  d["position"] = w->position;
  d["x"] = tupleToPy(w->x);
  d["y"] = tupleToPy(w->y);
  d["text"] = w->str();
  return std::move(d);
}

Domains domainsFor(const lang::Program& p, const std::string& method, const py::dict& overrides) {
  const auto& m = p.method(method);
  std::vector<std::pair<std::string, Interval>> ranges;
  for (auto [name, range] : overrides) {
    auto bounds = range.cast<py::tuple>();
    if (bounds.size() != 2) throw py::value_error("domain ranges are (lo, hi) pairs");
    ranges.emplace_back(name.cast<std::string>(), Interval::closed(fromPy(bounds[0]), fromPy(bounds[1])));
  }
  return lang::withOverrides(m, lang::inputDomain(m), ranges);
}

struct PyCharacterization {
  std::shared_ptr<const sym::Characterization> c;
};

PyCharacterization symexec(const ProgramPtr& p, const std::string& method, int unroll, bool useInvariants,
                           const py::dict& domains) {
  sym::SymexecConfig cfg;
  cfg.unrollDepth = unroll;
  cfg.useInvariants = useInvariants;
  cfg.domains = domainsFor(*p, method, domains);
  return {std::make_shared<const sym::Characterization>(sym::symexecMethod(*p, method, cfg))};
}

OracleConfig oracleConfig(const std::string& backend, const std::string& solver) {
  OracleConfig oc;
  oc.backend = option<Backend>(backend, parseBackend, "backend");
  if (!solver.empty()) oc.solver.command = solver;
  return oc;
}

std::shared_ptr<Oracle> makeOracle(const ProgramPtr& p, const PyCharacterization& c, const std::string& backend,
                                   const std::string& solver) {
  std::shared_ptr<const FunctionGraph> graph;
  const auto oc = oracleConfig(backend, solver);
  if (oc.backend == Backend::Auto || oc.backend == Backend::Brute) {
    bool finite = true;
    Integer product = 1;
    for (const auto& d : c.c->domains) {
      finite = finite && d.finite();
      if (finite) product *= d.size();
    }
    if (finite && product <= 2'000'000)
      graph = std::make_shared<const FunctionGraph>(enumerateGraph(*p, c.c->method, c.c->domains));
  }
  return std::make_shared<Oracle>(p, c.c, oc, graph);
}

py::dict reportToPy(const LineReport& r) {
  py::dict d;
  d["line"] = r.line;
  d["verdict"] = verdictName(r.verdict);
  d["witness"] = witnessToPy(r.witness);
  d["duplicate"] = r.duplicate;
  d["inconsistent"] = r.inconsistent;
  d["diagnostic"] = r.diagnostic;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Runtime monitoring of data minimality for programs in a small imperative language.";

  auto base = py::register_exception<Error>(m, "HypermonError");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<EvalError>(m, "EvalError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<SolverError>(m, "SolverError", base.ptr());
  py::register_exception<ContractError>(m, "ContractError", base.ptr());
  py::register_exception<InconsistentTrace>(m, "InconsistentTrace", base.ptr());

  py::class_<lang::Program, ProgramPtr>(m, "Program")
      .def_property_readonly("methods",
                             [](const lang::Program& p) {
                               std::vector<std::string> names;
                               for (const auto& md : p.methods) names.push_back(md.name);
                               return names;
                             })
      .def_property_readonly("default_method", &lang::Program::defaultEntry)
      .def(
          "domains",
          [](const lang::Program& p, const std::string& method) {
            py::list out;
            for (const auto& d : lang::inputDomain(p.method(method)))
              out.append(py::make_tuple(d.lo ? py::object(toPy(*d.lo)) : py::none(),
                                        d.hi ? py::object(toPy(*d.hi)) : py::none()));
            return out;
          },
          py::arg("method"), "Declared input ranges as (lo, hi); None marks an unbounded side.")
      .def(
          "evaluate",
          [](const lang::Program& p, const std::string& method, const py::iterable& args) {
            const auto values = tupleFromPy(args);
            return toPy(lang::evalMethod(p, method, values));
          },
          py::arg("method"), py::arg("args"));

  m.def("parse_program", [](const std::string& src) { return std::make_shared<lang::Program>(lang::parseProgram(src)); },
        py::arg("source"));
  m.def("load_program", [](const std::string& path) { return std::make_shared<lang::Program>(lang::loadProgram(path)); },
        py::arg("path"));

  py::class_<PyCharacterization>(m, "Characterization")
      .def_property_readonly("method", [](const PyCharacterization& c) { return c.c->method; })
      .def_property_readonly("exact", [](const PyCharacterization& c) { return c.c->exact; })
      .def_property_readonly("path_count", [](const PyCharacterization& c) { return c.c->paths.size(); })
      .def_property_readonly("havoc_paths",
                             [](const PyCharacterization& c) {
                               std::size_t n = 0;
                               for (const auto& path : c.c->paths) n += path.havoc();
                               return n;
                             })
      .def("text", [](const PyCharacterization& c) { return sym::dumpText(*c.c); })
      .def("smt", [](const PyCharacterization& c) { return sym::dumpSmt(*c.c); })
      .def(
          "validate",
          [](const PyCharacterization& c, const ProgramPtr& p, std::size_t samples, std::uint64_t seed) {
            const auto r = sym::validateCharacterization(*c.c, *p, samples, seed);
            py::dict d;
            d["samples"] = r.samples;
            d["havoc_hits"] = r.havocHits;
            d["issues"] = r.issues.size();
            d["ok"] = r.ok();
            return d;
          },
          py::arg("program"), py::arg("samples") = 1000, py::arg("seed") = 1);

  m.def("symexec", &symexec, py::arg("program"), py::arg("method"), py::arg("unroll") = 8,
        py::arg("use_invariants") = false, py::arg("domains") = py::dict(),
        "Path-wise characterization of a method; `domains` maps parameter names to (lo, hi).");

  py::class_<Oracle, std::shared_ptr<Oracle>>(m, "Oracle")
      .def(py::init([](const ProgramPtr& p, const std::string& method, const std::string& backend,
                       const std::string& solver, const py::dict& domains) {
             return makeOracle(p, symexec(p, method, 8, false, domains), backend, solver);
           }),
           py::arg("program"), py::arg("method"), py::arg("backend") = "auto", py::arg("solver") = "",
           py::arg("domains") = py::dict())
      .def(
          "query",
          [](Oracle& o, std::size_t i, const py::int_& x, const py::int_& y) {
            return verdictName(o.query(i, fromPy(x), fromPy(y)).value);
          },
          py::arg("i"), py::arg("x"), py::arg("y"),
          "TOP if some completion separates x and y at position i, BOTTOM if none does, else UNKNOWN.")
      .def_property_readonly("queries", &Oracle::queries)
      .def_property_readonly("backend_calls", &Oracle::backendCalls)
      .def_property_readonly("cache_hits", &Oracle::cacheHits);

  py::class_<Monitor>(m, "Monitor")
      .def(py::init([](const ProgramPtr& p, const std::string& method, const std::string& property,
                       const std::string& strategy, const std::string& backend, bool strict,
                       const py::dict& domains) {
             MonitorConfig cfg;
             cfg.property = option<Property>(property, parseProperty, "property");
             cfg.strategy = option<Strategy>(strategy, parseStrategy, "strategy");
             cfg.strict = strict;
             std::shared_ptr<Oracle> oracle;
             if (cfg.property == Property::Ddm)
               oracle = makeOracle(p, symexec(p, method, 8, false, domains), backend, "");
             return std::make_unique<Monitor>(p, method, cfg, oracle);
           }),
           py::arg("program"), py::arg("method"), py::arg("property") = "ddm", py::arg("strategy") = "eager",
           py::arg("backend") = "auto", py::arg("strict") = false, py::arg("domains") = py::dict())
      .def(
          "ingest",
          [](Monitor& mon, const py::iterable& inputs, const py::int_& output, int line) {
            return reportToPy(mon.ingest(IoPair{tupleFromPy(inputs), fromPy(output)}, line));
          },
          py::arg("inputs"), py::arg("output"), py::arg("line") = 0)
      .def_property_readonly("verdict", [](const Monitor& mon) { return verdictName(mon.verdict()); })
      .def_property_readonly("witness", [](const Monitor& mon) { return witnessToPy(mon.witness()); })
      .def_property_readonly("inconsistent", &Monitor::inconsistentCount)
      .def_property_readonly("diagnostics", &Monitor::diagnostics);

  m.def(
      "is_ddm",
      [](const ProgramPtr& p, const std::string& method, const py::dict& domains) {
        return isDdm(enumerateGraph(*p, method, domainsFor(*p, method, domains)));
      },
      py::arg("program"), py::arg("method"), py::arg("domains") = py::dict(),
      "Whether every input position is fully observable through the output on the finite domain.");

  m.def(
      "position_kernel",
      [](const ProgramPtr& p, const std::string& method, std::size_t i, const py::dict& domains) {
        py::list out;
        for (const auto& cls : positionKernel(enumerateGraph(*p, method, domainsFor(*p, method, domains)), i))
          out.append(tupleToPy(cls));
        return out;
      },
      py::arg("program"), py::arg("method"), py::arg("i"), py::arg("domains") = py::dict());

  m.def(
      "gen_traces",
      [](const ProgramPtr& p, const std::string& method, const std::string& kind, std::size_t count,
         std::uint64_t seed, const py::dict& domains) {
        const auto graph = enumerateGraph(*p, method, domainsFor(*p, method, domains));
        py::list out;
        for (const auto& t : genTraces(graph, option<TraceKind>(kind, parseTraceKind, "trace kind"), count, seed))
          out.append(py::make_tuple(tupleToPy(t.inputs), toPy(t.output)));
        return out;
      },
      py::arg("program"), py::arg("method"), py::arg("kind") = "K1", py::arg("count") = 100, py::arg("seed") = 1,
      py::arg("domains") = py::dict(), "Random (inputs, output) traces: raw (K1) or minimized (K2, K3).");

  m.def(
      "classify",
      [](const std::string& predicate, const std::vector<std::string>& atoms) {
        const auto f = hyper::StatePredicate::parse(predicate, atoms);
        const auto v = hyper::classify(f);
        py::dict d;
        d["classification"] = std::string(hyper::toString(v.classification));
        d["evidence"] = std::string(hyper::toString(v.evidence));
        d["reflexive"] = v.reflexive;
        d["serial"] = v.serial;
        d["falsifying"] = v.falsifying ? py::object(py::str(hyper::formatLetter(*v.falsifying, atoms))) : py::none();
        return d;
      },
      py::arg("predicate"), py::arg("atoms"),
      "Monitorability of `forall exists always F` for a two-letter state predicate F.");
}
