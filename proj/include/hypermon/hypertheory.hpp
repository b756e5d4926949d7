#pragma once

// Monitorability of forall-pi exists-pi' always F, where F is a state
// predicate over two letters (valuations of the atomic propositions).

#include "hypermon/error.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hypermon::hyper {

/// A valuation of the atomic propositions: bit k set iff atom k holds.
using Letter = std::uint32_t;
/// Largest number of atoms accepted by the enumerating deciders.
inline constexpr std::size_t kMaxAtoms = 20;

/// Boolean combination of atoms tagged with the trace they are read from:
/// `a@1` reads the first letter, `a@2` the second.
///
///     expr := impl ('<->' impl)*
///     impl := disj ['->' impl]
///     disj := conj (('||' | '|') conj)*
///     conj := unary (('&&' | '&') unary)*
///     unary := '!' unary | 'true' | 'false' | ATOM '@' ('1' | '2') | '(' expr ')'
class StatePredicate {
 public:
  static StatePredicate parse(std::string_view text, std::vector<std::string> atoms);

  const std::vector<std::string>& atoms() const { return atoms_; }
  bool eval(Letter first, Letter second) const;
  std::string str() const;

  enum class Kind { True, False, Atom, Not, And, Or, Implies, Iff };
  struct Node {
    Kind kind;
    int atom = -1;   // Atom
    int trace = 0;   // Atom: 1 or 2
    int lhs = -1;
    int rhs = -1;
  };

 private:
  friend class PredicateParser;
  bool evalNode(int node, Letter first, Letter second) const;
  std::string strNode(int node) const;

  std::vector<std::string> atoms_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

/// `{a, b}` for the atoms set in `v`.
std::string formatLetter(Letter v, const std::vector<std::string>& atoms);

/// F(v, v) for every letter v. Throws ConfigError above kMaxAtoms atoms.
bool isReflexive(const StatePredicate& f);
/// Every v has some v' with F(v, v'). Throws ConfigError above kMaxAtoms atoms.
bool isSerial(const StatePredicate& f);

enum class Monitorability { Monitorable, NonMonitorable };
enum class Evidence { Reflexive, NonSerial, None };

struct MonitorabilityVerdict {
  Monitorability classification;
  bool reflexive;
  bool serial;
  Evidence evidence;
  /// NonSerial: a letter v with F(v, v') false for every v'.
  std::optional<Letter> falsifying;
  /// Not reflexive: a letter v with F(v, v) false.
  std::optional<Letter> irreflexive;
};

/// Non-monitorable iff F is serial and not reflexive. Reflexive predicates
/// are permanently satisfied by pairing every trace with itself; non-serial
/// ones are permanently violated once a trace reaches the falsifying letter.
MonitorabilityVerdict classify(const StatePredicate& f);

std::string_view toString(Monitorability m);
std::string_view toString(Evidence e);

using FiniteTrace = std::vector<Letter>;

/// Appends the falsifying letter to the first trace of `u` (or adds a
/// one-letter trace when `u` is empty). Throws ContractError if F is serial.
std::vector<FiniteTrace> violatingExtension(const StatePredicate& f, std::vector<FiniteTrace> u);

}  // namespace hypermon::hyper
