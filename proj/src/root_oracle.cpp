#include "cactus/root_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace cactus {

namespace {

double gram_entry(int bond) {
  if (bond == kBondInfinity) return -1.0;
  return -std::cos(M_PI / bond);
}

bool coords_equal(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace

bool RootSystem::is_positive(int r) const {
  for (double c : roots[r])
    if (c < -tolerance) return false;
  return true;
}

int RootSystem::positive_count() const {
  int n = 0;
  for (int r = 0; r < root_count(); ++r)
    if (is_positive(r)) ++n;
  return n;
}

int RootSystem::simple_position(int ambient_index) const {
  for (int k = 0; k < rank(); ++k)
    if (simple[k] == ambient_index) return k;
  return -1;
}

RootSystem build_root_system(const CoxeterMatrix& m, Subset x, int cap) {
  RootSystem rs;
  rs.simple = x.members();
  const int n = rs.rank();
  if (cap < 2 * n) throw std::invalid_argument("build_root_system: cap too small");

  std::vector<double> gram(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram[i * n + j] = (i == j) ? 1.0 : gram_entry(m.bond(rs.simple[i], rs.simple[j]));

  auto reflect = [&](int k, const std::vector<double>& v) {
    // s_k(v) = v - 2 <alpha_k, v> alpha_k in simple-root coordinates
    double inner = 0;
    for (int j = 0; j < n; ++j) inner += gram[k * n + j] * v[j];
    std::vector<double> out = v;
    out[k] -= 2 * inner;
    return out;
  };

  auto find_root = [&](const std::vector<double>& v) {
    for (int r = 0; r < rs.root_count(); ++r)
      if (coords_equal(rs.roots[r], v, rs.tolerance)) return r;
    return -1;
  };

  for (int i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    rs.roots.push_back(std::move(e));
  }
  for (std::size_t head = 0; head < rs.roots.size(); ++head) {
    for (int k = 0; k < n; ++k) {
      auto img = reflect(k, rs.roots[head]);
      if (find_root(img) < 0) {
        if (static_cast<int>(rs.roots.size()) >= cap)
          throw cap_exceeded("not finite type at this cap");
        rs.roots.push_back(std::move(img));
      }
    }
  }

  rs.reflection.assign(n, std::vector<int>(rs.root_count()));
  for (int k = 0; k < n; ++k)
    for (int r = 0; r < rs.root_count(); ++r) {
      int img = find_root(reflect(k, rs.roots[r]));
      if (img < 0) throw std::logic_error("reflection does not permute the closed root list");
      rs.reflection[k][r] = img;
    }
  rs.negative.assign(rs.root_count(), -1);
  for (int r = 0; r < rs.root_count(); ++r) {
    std::vector<double> neg = rs.roots[r];
    for (double& c : neg) c = -c;
    rs.negative[r] = find_root(neg);
    if (rs.negative[r] < 0) throw std::logic_error("root list is not closed under negation");
  }
  return rs;
}

OracleElement identity_element(const RootSystem& rs) {
  OracleElement e;
  e.perm.resize(rs.root_count());
  std::iota(e.perm.begin(), e.perm.end(), 0);
  return e;
}

OracleElement simple_reflection(const RootSystem& rs, int ambient_index) {
  int k = rs.simple_position(ambient_index);
  if (k < 0) throw std::invalid_argument("simple_reflection: not a simple generator here");
  return OracleElement{rs.reflection[k]};
}

OracleElement compose(const RootSystem&, const OracleElement& a, const OracleElement& b) {
  OracleElement c;
  c.perm.resize(a.perm.size());
  for (std::size_t r = 0; r < a.perm.size(); ++r) c.perm[r] = a.perm[b.perm[r]];
  return c;
}

OracleElement inverse(const RootSystem&, const OracleElement& a) {
  OracleElement c;
  c.perm.resize(a.perm.size());
  for (std::size_t r = 0; r < a.perm.size(); ++r) c.perm[a.perm[r]] = static_cast<int>(r);
  return c;
}

OracleElement element_from_word(const RootSystem& rs, const std::vector<int>& word) {
  OracleElement w = identity_element(rs);
  for (int g : word) {
    int k = rs.simple_position(g);
    if (k < 0) throw std::invalid_argument("element_from_word: bad generator index");
    OracleElement next;
    next.perm.resize(w.perm.size());
    for (std::size_t r = 0; r < w.perm.size(); ++r) next.perm[r] = w.perm[rs.reflection[k][r]];
    w = std::move(next);
  }
  return w;
}

int element_length(const RootSystem& rs, const OracleElement& a) {
  int len = 0;
  for (int r = 0; r < rs.root_count(); ++r)
    if (rs.is_positive(r) && !rs.is_positive(a.perm[r])) ++len;
  return len;
}

OracleElement longest_element(const RootSystem& rs) {
  Subset all;
  for (int s : rs.simple) all = all.with(s);
  return parabolic_longest(rs, all);
}

OracleElement parabolic_longest(const RootSystem& rs, Subset y) {
  OracleElement w = identity_element(rs);
  for (;;) {
    int pick = -1;
    for (int k = 0; k < rs.rank(); ++k) {
      if (!y.contains(rs.simple[k])) continue;
      if (rs.is_positive(w.perm[k])) {  // root k is the k-th simple root
        pick = k;
        break;
      }
    }
    if (pick < 0) return w;
    OracleElement next;
    next.perm.resize(w.perm.size());
    for (std::size_t r = 0; r < w.perm.size(); ++r) next.perm[r] = w.perm[rs.reflection[pick][r]];
    w = std::move(next);
  }
}

std::optional<Subset> conjugate_subset(const CoxeterMatrix& m, Subset x, Subset y) {
  Subset u = x.unite(y);
  if (!is_finite_group(m, u)) {
    if (!y.subset_of(x)) throw oracle_undecidable("oracle cannot decide");
    u = x;
  }
  RootSystem rs = build_root_system(m, u);
  OracleElement w = parabolic_longest(rs, x);
  Subset image;
  for (int s : y.members()) {
    int k = rs.simple_position(s);
    int img = w.perm[k];
    if (!rs.is_positive(img)) img = rs.negative[img];
    // the first rank() entries of the root list are the simple roots
    if (img >= rs.rank()) return std::nullopt;  // conjugate reflection is not simple
    image = image.with(rs.simple[img]);
  }
  return image;
}

long long group_order(const RootSystem& rs, long long cap) {
  struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (int x : v) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return h;
    }
  };
  std::unordered_set<std::vector<int>, VecHash> seen;
  std::vector<std::vector<int>> frontier{identity_element(rs).perm};
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& p : frontier)
      for (int k = 0; k < rs.rank(); ++k) {
        std::vector<int> q(p.size());
        for (std::size_t r = 0; r < p.size(); ++r) q[r] = p[rs.reflection[k][r]];
        if (seen.insert(q).second) {
          if (static_cast<long long>(seen.size()) > cap) throw cap_exceeded("group order cap exceeded");
          next.push_back(std::move(q));
        }
      }
    frontier = std::move(next);
  }
  return static_cast<long long>(seen.size());
}

}  // namespace cactus
