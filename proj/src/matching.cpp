#include "tspgap/matching.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "tspgap/errors.hpp"

namespace tspgap {

namespace {

// Maximum-weight matching (optionally of maximum cardinality) by the
// primal-dual blossom method in O(n^3). Vertices 0..n-1 are real vertices,
// n..2n-1 are blossom slots. Endpoint p of edge k is 2k (first endpoint) or
// 2k+1 (second); p ^ 1 is the opposite endpoint.
class Blossom {
 public:
  struct WEdge {
    int i;
    int j;
    Rat w;
  };

  Blossom(int n, std::vector<WEdge> edges) : n_(n), edges_(std::move(edges)) {}

  // mate[v] = edge index matched at v, or -1.
  std::vector<int> solve(bool max_cardinality) {
    const int nedge = static_cast<int>(edges_.size());
    std::vector<int> result(n_, -1);
    if (nedge == 0) return result;

    Rat maxweight = 0;
    for (const auto& e : edges_) maxweight = std::max(maxweight, e.w);

    endpoint_.resize(2 * nedge);
    for (int k = 0; k < nedge; ++k) {
      endpoint_[2 * k] = edges_[k].i;
      endpoint_[2 * k + 1] = edges_[k].j;
    }
    neighbend_.assign(n_, {});
    for (int k = 0; k < nedge; ++k) {
      neighbend_[edges_[k].i].push_back(2 * k + 1);
      neighbend_[edges_[k].j].push_back(2 * k);
    }
    mate_.assign(n_, -1);
    label_.assign(2 * n_, 0);
    labelend_.assign(2 * n_, -1);
    inblossom_.resize(n_);
    for (int v = 0; v < n_; ++v) inblossom_[v] = v;
    blossomparent_.assign(2 * n_, -1);
    blossomchilds_.assign(2 * n_, {});
    blossombase_.assign(2 * n_, -1);
    for (int v = 0; v < n_; ++v) blossombase_[v] = v;
    blossomendps_.assign(2 * n_, {});
    bestedge_.assign(2 * n_, -1);
    blossombestedges_.assign(2 * n_, {});
    has_bestedges_.assign(2 * n_, false);
    unusedblossoms_.clear();
    for (int b = n_; b < 2 * n_; ++b) unusedblossoms_.push_back(b);
    dualvar_.assign(2 * n_, Rat(0));
    for (int v = 0; v < n_; ++v) dualvar_[v] = maxweight;
    allowedge_.assign(nedge, false);
    queue_.clear();

    for (int stage = 0; stage < n_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = n_; b < 2 * n_; ++b) {
        blossombestedges_[b].clear();
        has_bestedges_[b] = false;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), false);
      queue_.clear();

      for (int v = 0; v < n_; ++v) {
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
      }

      bool augmented = false;
      for (;;) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          for (int p : neighbend_[v]) {
            const int k = p / 2;
            const int w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            Rat kslack;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[k] = true;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                const int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              const int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
            }
          }
        }
        if (augmented) break;

        int deltatype = -1;
        Rat delta;
        int deltaedge = -1;
        int deltablossom = -1;
        if (!max_cardinality) {
          deltatype = 1;
          delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
        }
        for (int v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            Rat d = slack(bestedge_[v]);
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * n_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            Rat d = slack(bestedge_[b]) / 2;
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
              (deltatype == -1 || dualvar_[b] < delta)) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }
        if (deltatype == -1) {
          deltatype = 1;
          delta = std::max(Rat(0), *std::min_element(dualvar_.begin(), dualvar_.begin() + n_));
        }

        for (int v = 0; v < n_; ++v) {
          const int l = label_[inblossom_[v]];
          if (l == 1) {
            dualvar_[v] -= delta;
          } else if (l == 2) {
            dualvar_[v] += delta;
          }
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1) {
              dualvar_[b] += delta;
            } else if (label_[b] == 2) {
              dualvar_[b] -= delta;
            }
          }
        }

        if (deltatype == 1) break;
        if (deltatype == 2) {
          allowedge_[deltaedge] = true;
          int i = edges_[deltaedge].i;
          if (label_[inblossom_[i]] == 0) i = edges_[deltaedge].j;
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = true;
          queue_.push_back(edges_[deltaedge].i);
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) break;

      for (int b = n_; b < 2 * n_; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0) {
          expand_blossom(b, true);
        }
      }
    }

    for (int v = 0; v < n_; ++v) {
      if (mate_[v] >= 0) result[v] = mate_[v] / 2;
    }
    return result;
  }

 private:
  Rat slack(int k) const { return dualvar_[edges_[k].i] + dualvar_[edges_[k].j] - 2 * edges_[k].w; }

  static int wrap(int j, int len) { return ((j % len) + len) % len; }

  void leaves(int b, std::vector<int>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[b]) leaves(t, out);
  }

  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      leaves(b, queue_);
    } else if (t == 2) {
      const int base = blossombase_[b];
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = edges_[k].i;
    int w = edges_[k].j;
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    const int b = unusedblossoms_.back();
    unusedblossoms_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    auto& path = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    for (int leaf : leaves(b)) {
      if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
      inblossom_[leaf] = b;
    }

    std::vector<int> bestedgeto(2 * n_, -1);
    for (int child : path) {
      std::vector<std::vector<int>> nblists;
      if (!has_bestedges_[child]) {
        for (int leaf : leaves(child)) {
          std::vector<int> list;
          for (int p : neighbend_[leaf]) list.push_back(p / 2);
          nblists.push_back(std::move(list));
        }
      } else {
        nblists.push_back(blossombestedges_[child]);
      }
      for (const auto& nblist : nblists) {
        for (int kk : nblist) {
          int i = edges_[kk].i;
          int j = edges_[kk].j;
          if (inblossom_[j] == b) std::swap(i, j);
          const int bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
            bestedgeto[bj] = kk;
          }
        }
      }
      blossombestedges_[child].clear();
      has_bestedges_[child] = false;
      bestedge_[child] = -1;
    }
    blossombestedges_[b].clear();
    for (int kk : bestedgeto) {
      if (kk != -1) blossombestedges_[b].push_back(kk);
    }
    has_bestedges_[b] = true;
    bestedge_[b] = -1;
    for (int kk : blossombestedges_[b]) {
      if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
    }
  }

  void expand_blossom(int b, bool endstage) {
    const std::vector<int> children = blossomchilds_[b];
    for (int s : children) {
      blossomparent_[s] = -1;
      if (s < n_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (int leaf : leaves(s)) inblossom_[leaf] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const auto& childs = blossomchilds_[b];
      const auto& endps = blossomendps_[b];
      const int len = static_cast<int>(childs.size());
      const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
      int jstep;
      int endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[endps[wrap(j - endptrick, len)] ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[endps[wrap(j - endptrick, len)] / 2] = true;
        j += jstep;
        p = endps[wrap(j - endptrick, len)] ^ endptrick;
        allowedge_[p / 2] = true;
        j += jstep;
      }
      int bv = childs[wrap(j, len)];
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (childs[wrap(j, len)] != entrychild) {
        bv = childs[wrap(j, len)];
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        int found = -1;
        for (int leaf : leaves(bv)) {
          if (label_[leaf] != 0) {
            found = leaf;
            break;
          }
        }
        if (found >= 0) {
          label_[found] = 0;
          label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
          assign_label(found, 2, labelend_[found]);
        }
        j += jstep;
      }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_bestedges_[b] = false;
    bestedge_[b] = -1;
    unusedblossoms_.push_back(b);
  }

  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= n_) augment_blossom(t, v);
    auto& childs = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    const int len = static_cast<int>(childs.size());
    const int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = childs[wrap(j, len)];
      const int p = endps[wrap(j - endptrick, len)] ^ endptrick;
      if (t >= n_) augment_blossom(t, endpoint_[p]);
      j += jstep;
      t = childs[wrap(j, len)];
      if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
  }

  void augment_matching(int k) {
    const int v = edges_[k].i;
    const int w = edges_[k].j;
    for (auto [s, p] : {std::pair{v, 2 * k + 1}, std::pair{w, 2 * k}}) {
      for (;;) {
        const int bs = inblossom_[s];
        if (bs >= n_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        const int t = endpoint_[labelend_[bs]];
        const int bt = inblossom_[t];
        s = endpoint_[labelend_[bt]];
        const int j = endpoint_[labelend_[bt] ^ 1];
        if (bt >= n_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  int n_;
  std::vector<WEdge> edges_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<std::vector<int>> blossomchilds_;
  std::vector<int> blossombase_;
  std::vector<std::vector<int>> blossomendps_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> blossombestedges_;
  std::vector<bool> has_bestedges_;
  std::vector<int> unusedblossoms_;
  std::vector<Rat> dualvar_;
  std::vector<bool> allowedge_;
  std::vector<int> queue_;
};

// Integer costs whose strict order realises (cost, lexicographic id set):
// cost scaled to an integer, times 2^(m+1), minus 2^(m - rank) where the
// smallest id has rank 1.
std::vector<mpz_class> perturbed_costs(const MultiGraph& g) {
  const int m = g.num_edges();
  std::vector<Rat> costs;
  for (const auto& e : g.edges()) costs.push_back(e.cost);
  const mpz_class scale = common_denominator(costs.begin(), costs.end());
  std::vector<mpz_class> out(m);
  for (int k = 0; k < m; ++k) {
    mpz_class c = costs[k].get_num() * (scale / costs[k].get_den());
    mpz_class high;
    mpz_mul_2exp(high.get_mpz_t(), c.get_mpz_t(), static_cast<mp_bitcnt_t>(m + 1));
    mpz_class bonus;
    mpz_ui_pow_ui(bonus.get_mpz_t(), 2, static_cast<unsigned long>(m - (k + 1)));
    out[k] = high - bonus;
  }
  return out;
}

}  // namespace

PerfectMatching min_cost_perfect_matching(const MultiGraph& g) {
  const int n = g.num_vertices();
  if (n % 2 != 0) {
    std::vector<int> all;
    for (int v = 0; v < n; ++v) all.push_back(v);
    throw NoPerfectMatchingError("odd number of vertices", all);
  }
  PerfectMatching result;
  result.total_cost = 0;
  if (n == 0) return result;

  const auto perturbed = perturbed_costs(g);
  // Keep one edge per vertex pair: the one with the smallest perturbed cost.
  std::map<std::pair<int, int>, EdgeId> best;
  for (const auto& e : g.edges()) {
    auto key = std::minmax(e.a, e.b);
    auto it = best.find(key);
    if (it == best.end() || perturbed[e.id] < perturbed[it->second]) best[key] = e.id;
  }
  std::vector<EdgeId> kept;
  mpz_class top = 0;
  for (const auto& [key, id] : best) {
    kept.push_back(id);
    if (kept.size() == 1 || perturbed[id] > top) top = perturbed[id];
  }
  std::vector<Blossom::WEdge> wedges;
  for (EdgeId id : kept) {
    const auto& e = g.edge(id);
    wedges.push_back({e.a, e.b, Rat(top + 1 - perturbed[id])});
  }
  auto mate = Blossom(n, std::move(wedges)).solve(/*max_cardinality=*/true);
  std::vector<int> exposed;
  for (int v = 0; v < n; ++v) {
    if (mate[v] < 0) exposed.push_back(v);
  }
  if (!exposed.empty()) {
    throw NoPerfectMatchingError("no perfect matching: " + std::to_string(exposed.size()) +
                                     " vertices exposed by a maximum matching",
                                 exposed);
  }
  for (int v = 0; v < n; ++v) {
    const EdgeId id = kept[mate[v]];
    if (v == std::min(g.edge(id).a, g.edge(id).b)) result.edges.push_back(id);
  }
  std::sort(result.edges.begin(), result.edges.end());
  for (EdgeId id : result.edges) result.total_cost += g.edge(id).cost;
  check_perfect_matching(g, result);
  return result;
}

PerfectMatching brute_force_perfect_matching(const MultiGraph& g) {
  const int n = g.num_vertices();
  if (n > 16) throw PreconditionError("brute-force matching limited to 16 vertices");
  if (n % 2 != 0) {
    std::vector<int> all;
    for (int v = 0; v < n; ++v) all.push_back(v);
    throw NoPerfectMatchingError("odd number of vertices", all);
  }
  std::vector<bool> used(n, false);
  std::vector<EdgeId> current;
  Rat current_cost = 0;
  std::optional<PerfectMatching> best;

  std::function<void()> rec = [&]() {
    int v = 0;
    while (v < n && used[v]) ++v;
    if (v == n) {
      std::vector<EdgeId> sorted = current;
      std::sort(sorted.begin(), sorted.end());
      if (!best || current_cost < best->total_cost ||
          (current_cost == best->total_cost && sorted < best->edges)) {
        best = PerfectMatching{sorted, current_cost};
      }
      return;
    }
    used[v] = true;
    for (EdgeId id : g.incident(v)) {
      const VertexId u = g.edge(id).other(v);
      if (used[u]) continue;
      used[u] = true;
      current.push_back(id);
      current_cost += g.edge(id).cost;
      rec();
      current_cost -= g.edge(id).cost;
      current.pop_back();
      used[u] = false;
    }
    used[v] = false;
  };
  rec();
  if (!best) {
    std::vector<int> all;
    for (int v = 0; v < n; ++v) all.push_back(v);
    throw NoPerfectMatchingError("exhaustive search found no perfect matching", all);
  }
  return *best;
}

void check_perfect_matching(const MultiGraph& g, const PerfectMatching& m) {
  std::vector<int> covered(g.num_vertices(), 0);
  Rat cost = 0;
  for (EdgeId id : m.edges) {
    const auto& e = g.edge(id);
    ++covered[e.a];
    ++covered[e.b];
    cost += e.cost;
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (covered[v] != 1) {
      throw InvariantError("matching", "vertex " + std::to_string(v) + " covered " +
                                           std::to_string(covered[v]) + " times");
    }
  }
  if (cost != m.total_cost) throw InvariantError("matching", "total cost mismatch");
}

std::string PolytopeViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kNegative:
      os << "x(e" << edge << ") = " << to_string(lhs) << " < 0";
      break;
    case Kind::kDegree:
      os << "x(delta(" << vertex << ")) = " << to_string(lhs) << " != 1";
      break;
    case Kind::kOddSet:
      os << "x(delta({";
      for (std::size_t i = 0; i < set.size(); ++i) os << (i ? "," : "") << set[i];
      os << "})) = " << to_string(lhs) << " < 1";
      break;
  }
  return os.str();
}

namespace {

// Walks all subsets of {0..k-1} in Gray-code order, maintaining the weight
// of the cut. `Value` is std::int64_t or Rat.
template <typename Value>
std::optional<std::uint32_t> find_light_odd_set(const MultiGraph& g, const std::vector<Value>& w,
                                                const Value& one, int k) {
  const int n = g.num_vertices();
  std::uint32_t mask = 0;
  Value cut = 0;
  const std::uint64_t limit = std::uint64_t{1} << k;
  for (std::uint64_t step = 1; step < limit; ++step) {
    const int v = std::countr_zero(step);
    mask ^= std::uint32_t{1} << v;
    const bool inside = (mask >> v) & 1u;
    for (EdgeId id : g.incident(v)) {
      const VertexId u = g.edge(id).other(v);
      const bool u_inside = (mask >> u) & 1u;
      // After the toggle, v and u are on different sides iff inside != u_inside.
      if (inside != u_inside) {
        cut += w[id];
      } else {
        cut -= w[id];
      }
    }
    if (std::popcount(mask) % 2 == 1 && static_cast<int>(std::popcount(mask)) < n && cut < one) {
      return mask;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<PolytopeViolation> check_matching_polytope_point(const MultiGraph& g,
                                                               const std::vector<Rat>& x) {
  const int n = g.num_vertices();
  if (static_cast<int>(x.size()) != g.num_edges()) {
    throw ValidationError("point has " + std::to_string(x.size()) + " values for " +
                          std::to_string(g.num_edges()) + " edges");
  }
  if (n > 24) throw PreconditionError("odd-set enumeration limited to 24 vertices");
  using Kind = PolytopeViolation::Kind;
  for (const auto& e : g.edges()) {
    if (x[e.id] < 0) return PolytopeViolation{Kind::kNegative, e.id, -1, {}, x[e.id]};
  }
  for (int v = 0; v < n; ++v) {
    Rat deg = 0;
    for (EdgeId id : g.incident(v)) deg += x[id];
    if (deg != 1) return PolytopeViolation{Kind::kDegree, -1, v, {}, deg};
  }
  // With n even, S and its complement are both odd with the same cut, so
  // fixing the last vertex outside S covers every odd set once.
  const int k = n % 2 == 0 ? n - 1 : n;
  if (k <= 0) return std::nullopt;

  const mpz_class scale = common_denominator(x.begin(), x.end());
  Rat total = 0;
  for (const auto& v : x) total += v;
  std::optional<std::uint32_t> bad;
  const mpz_class bound = mpz_class(1) << 62;
  if (total * scale < Rat(bound) && scale < bound) {
    std::vector<std::int64_t> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      w[i] = mpz_class(x[i].get_num() * (scale / x[i].get_den())).get_si();
    }
    bad = find_light_odd_set<std::int64_t>(g, w, scale.get_si(), k);
  } else {
    bad = find_light_odd_set<Rat>(g, x, Rat(1), k);
  }
  if (!bad) return std::nullopt;
  PolytopeViolation out{Kind::kOddSet, -1, -1, {}, Rat(0)};
  for (int v = 0; v < n; ++v) {
    if ((*bad >> v) & 1u) out.set.push_back(v);
  }
  for (const auto& e : g.edges()) {
    const bool a = (*bad >> e.a) & 1u;
    const bool b = (*bad >> e.b) & 1u;
    if (a != b) out.lhs += x[e.id];
  }
  return out;
}

NpBoundResult np_bound_check(const MultiGraph& g) {
  if (auto v = first_non_cubic_vertex(g)) {
    throw PreconditionError("vertex " + std::to_string(*v) + " has degree " + std::to_string(g.degree(*v)) +
                            ", graph is not cubic");
  }
  const auto bridges = find_bridges(g);
  if (!bridges.empty()) {
    const auto& e = g.edge(bridges.front());
    throw PreconditionError("edge " + std::to_string(e.id) + " (" + std::to_string(e.a) + "," +
                            std::to_string(e.b) + ") is a bridge");
  }
  if (count_components(g) > 1) throw PreconditionError("graph is not connected");
  NpBoundResult out;
  out.matching = min_cost_perfect_matching(g);
  out.bound = g.total_cost() / 3;
  out.bound_holds = out.matching.total_cost <= out.bound;
  return out;
}

}  // namespace tspgap
