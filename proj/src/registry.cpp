#include "liesys/registry.hpp"

#include <cmath>
#include <algorithm>
#include <iomanip>
#include <optional>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "liesys/errors.hpp"

namespace liesys {
namespace {

// One-based helper so the tables below read like the usual relations.
void rel(StructureConstants& sc, int alpha, int beta, int gamma, double value) {
  sc.set_bracket(alpha - 1, beta - 1, gamma - 1, value);
}

std::vector<int> ascending(int r) {
  std::vector<int> order(static_cast<std::size_t>(r));
  std::iota(order.begin(), order.end(), 0);
  return order;
}

std::vector<int> zero_based(std::initializer_list<int> one_based) {
  std::vector<int> out;
  for (int i : one_based) out.push_back(i - 1);
  return out;
}

StructureConstants make_sl2(const std::string& name, int dim) {
  StructureConstants sc(name, dim);
  rel(sc, 1, 2, 1, 1.0);
  rel(sc, 1, 3, 2, 2.0);
  rel(sc, 2, 3, 3, 1.0);
  return sc;
}

StructureConstants make_g5(const std::string& name, int dim) {
  StructureConstants sc = make_sl2(name, dim);
  rel(sc, 1, 5, 4, -1.0);
  rel(sc, 2, 4, 4, -0.5);
  rel(sc, 2, 5, 5, 0.5);
  rel(sc, 3, 4, 5, 1.0);
  return sc;
}

StructureConstants make_g_eps(int eps) {
  StructureConstants sc(g_eps_key(eps), 3);
  rel(sc, 1, 2, 3, 1.0);
  rel(sc, 2, 3, 1, static_cast<double>(eps));
  rel(sc, 3, 1, 2, 1.0);
  return sc;
}

std::vector<AlgebraEntry> make_builtins() {
  std::vector<AlgebraEntry> out;

  StructureConstants h3("h3", 3);
  rel(h3, 1, 2, 3, 1.0);
  out.push_back({"h3", h3, "Heisenberg-Weyl, [a1,a2]=a3; Brockett integrator, hopping robot",
                 ascending(3)});

  StructureConstants h3c("h3-classical", 3);
  rel(h3c, 1, 2, 3, -1.0);
  out.push_back({"h3-classical", h3c,
                 "Heisenberg-Weyl with [a1,a2]=-a3; classical time-dependent linear potential",
                 zero_based({3, 2, 1})});

  StructureConstants h3e("h3-ext4", 4);
  rel(h3e, 1, 2, 3, 1.0);
  rel(h3e, 2, 3, 4, 1.0);
  out.push_back({"h3-ext4", h3e,
                 "central extension of h3-classical; quantum time-dependent linear potential",
                 zero_based({4, 3, 2, 1})});

  StructureConstants se2("se2", 3);
  rel(se2, 1, 2, 3, 1.0);
  rel(se2, 1, 3, 2, -1.0);
  out.push_back({"se2", se2, "Euclidean group of the plane; robot unicycle", ascending(3)});

  out.push_back({"sl2", make_sl2("sl2", 3), "sl(2,R) in the quadratic-Hamiltonian basis",
                 ascending(3)});

  out.push_back({"g5", make_g5("g5", 5),
                 "R^2 x| sl(2,R); classical time-dependent quadratic Hamiltonians",
                 zero_based({4, 5, 1, 2, 3})});

  StructureConstants hsp = make_g5("hsp2", 6);
  rel(hsp, 4, 5, 6, 1.0);
  out.push_back({"hsp2", hsp,
                 "extended symplectic algebra h(3) x| sl(2,R); quantum quadratic Hamiltonians",
                 zero_based({4, 5, 6, 1, 2, 3})});

  for (int eps : {1, 0, -1})
    out.push_back({g_eps_key(eps), make_g_eps(eps),
                   "signature algebra g_eps ([a1,a2]=a3, [a2,a3]=eps a1, [a3,a1]=a2); "
                   "generalized elastic problem",
                   ascending(3)});

  out.push_back({"r2", StructureConstants("r2", 2), "abelian R^2", ascending(2)});
  return out;
}

}  // namespace

std::string g_eps_key(int eps) { return "g_eps(" + std::to_string(eps) + ")"; }

const std::vector<AlgebraEntry>& builtin_algebras() {
  static const std::vector<AlgebraEntry> entries = make_builtins();
  return entries;
}

const AlgebraEntry& find_algebra(const std::string& key) {
  for (const auto& e : builtin_algebras())
    if (e.key == key) return e;
  std::string valid;
  for (const auto& e : builtin_algebras()) valid += (valid.empty() ? "" : ", ") + e.key;
  throw UnknownKey("unknown algebra '" + key + "'; valid keys: " + valid);
}

std::vector<AlgebraEntry> parse_algebra_definitions(std::istream& in) {
  struct Pending {
    std::string name;
    int dim = 0;
    int name_line = 0;
    std::vector<int> order;
    std::vector<std::tuple<int, int, int, double>> entries;
    std::set<std::tuple<int, int, int>> seen;
  };

  std::vector<AlgebraEntry> out;
  std::optional<Pending> cur;

  auto finish = [&]() {
    if (!cur) return;
    if (cur->dim <= 0) throw ParseError("record '" + cur->name + "' has no dim", cur->name_line);
    StructureConstants sc(cur->name, cur->dim);
    for (const auto& [a, b, g, v] : cur->entries) sc.set_bracket(a - 1, b - 1, g - 1, v);
    std::vector<int> order = cur->order.empty() ? ascending(cur->dim) : cur->order;
    out.push_back({cur->name, sc, "loaded from definition file", order});
    cur.reset();
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;

    if (head == "name") {
      finish();
      cur.emplace();
      cur->name_line = lineno;
      if (!(ls >> cur->name)) throw ParseError("name: missing value", lineno);
      continue;
    }
    if (!cur) throw ParseError("expected 'name' to start a record, got '" + head + "'", lineno);

    if (head == "dim") {
      if (!(ls >> cur->dim) || cur->dim <= 0) throw ParseError("dim: expected positive integer", lineno);
      continue;
    }
    if (head == "order") {
      int idx;
      std::vector<int> order;
      while (ls >> idx) order.push_back(idx - 1);
      std::vector<int> sorted = order;
      std::sort(sorted.begin(), sorted.end());
      if (static_cast<int>(order.size()) != cur->dim || sorted != ascending(cur->dim))
        throw ParseError("order: expected a permutation of 1.." + std::to_string(cur->dim), lineno);
      cur->order = order;
      continue;
    }

    std::istringstream entry(line);
    int a, b, g;
    double v;
    if (!(entry >> a >> b >> g >> v)) throw ParseError("expected 'alpha beta gamma value'", lineno);
    if (cur->dim <= 0) throw ParseError("structure constant before dim", lineno);
    if (a < 1 || b < 1 || g < 1 || a > cur->dim || b > cur->dim || g > cur->dim)
      throw ParseError("index out of range 1.." + std::to_string(cur->dim), lineno);
    if (a >= b) throw ParseError("entries must have alpha < beta", lineno);
    if (!cur->seen.insert({a, b, g}).second)
      throw ParseError("duplicate entry (" + std::to_string(a) + "," + std::to_string(b) + "," +
                           std::to_string(g) + ")",
                       lineno);
    cur->entries.emplace_back(a, b, g, v);
  }
  finish();
  return out;
}

std::string format_algebra_definition(const AlgebraEntry& entry) {
  const auto& sc = entry.constants;
  std::ostringstream os;
  os << std::setprecision(17);
  os << "name " << entry.key << "\n";
  os << "dim " << sc.dim() << "\n";
  os << "order";
  for (int i : entry.default_order) os << ' ' << i + 1;
  os << "\n";
  for (int a = 0; a < sc.dim(); ++a)
    for (int b = a + 1; b < sc.dim(); ++b)
      for (int g = 0; g < sc.dim(); ++g)
        if (sc(g, a, b) != 0.0) os << a + 1 << ' ' << b + 1 << ' ' << g + 1 << ' ' << sc(g, a, b) << "\n";
  return os.str();
}

}  // namespace liesys
