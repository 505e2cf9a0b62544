#include "scafnav/scaffold.h"

#include <vector>

#include "scafnav/canonical.h"
#include "scafnav/error.h"
#include "scafnav/smiles.h"

namespace scafnav {

MolGraph murcko_scaffold(const MolGraph &g) {
  int components = 0;
  g.component_ids(&components);
  if (components > 1)
    throw Error(ErrorCode::kMultiComponentInput,
                "murcko_scaffold expects a single component");
  const int n = g.num_atoms();

  std::vector<int> degree(n);
  std::vector<bool> keep(n, true);
  std::vector<int> queue;
  for (int i = 0; i < n; ++i) {
    degree[i] = g.degree(i);
    if (degree[i] <= 1)
      queue.push_back(i);
  }
  while (!queue.empty()) {
    const int u = queue.back();
    queue.pop_back();
    if (!keep[u])
      continue;
    keep[u] = false;
    for (const auto &nb: g.neighbors(u)) {
      if (keep[nb.atom] && --degree[nb.atom] <= 1)
        queue.push_back(nb.atom);
    }
  }

  std::vector<bool> framework = keep;
  for (int i = 0; i < n; ++i) {
    if (!framework[i])
      continue;
    for (const auto &nb: g.neighbors(i)) {
      const BondOrder order = g.bond(nb.bond).order;
      if (!framework[nb.atom] &&
          (order == BondOrder::kDouble || order == BondOrder::kTriple))
        keep[nb.atom] = true;
    }
  }

  return capped_subgraph(g, keep, std::vector<bool>(g.num_bonds(), true));
}

Scaffold scaffold_of(const MolGraph &g) {
  const MolGraph framework = murcko_scaffold(g);
  Scaffold s;
  s.key = write_canonical(framework);
  s.ring_count = ring_count(framework);
  return s;
}

Scaffold scaffold_key(std::string_view smiles) {
  return scaffold_of(largest_component(parse_smiles(smiles)));
}

}  // namespace scafnav
