#include "w3b/webs.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "w3b/error.hpp"
#include "w3b/linalg.hpp"

namespace w3b {

namespace {

bool g_parallel_webs = true;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void set_parallel_webs(bool enabled) { g_parallel_webs = enabled; }
bool parallel_webs() { return g_parallel_webs; }

// ---------------------------------------------------------------------------
// Web basics
// ---------------------------------------------------------------------------

Web::Web(std::vector<int> bottom_sig, std::vector<int> top_sig)
    : nbottom_(static_cast<int>(bottom_sig.size())),
      ntop_(static_cast<int>(top_sig.size())),
      bottom_sig_(std::move(bottom_sig)),
      top_sig_(std::move(top_sig)) {
  for (int s : bottom_sig_)
    require(s == 1 || s == 2, Err::BadInput, "signature entries must be 1 or 2");
  for (int s : top_sig_)
    require(s == 1 || s == 2, Err::BadInput, "signature entries must be 1 or 2");
  leg_in_.resize(nbottom_ + ntop_);
  for (int i = 0; i < nbottom_; ++i) leg_in_[i] = (bottom_sig_[i] == 1);
  for (int i = 0; i < ntop_; ++i) leg_in_[disk_of_top(i)] = (top_sig_[i] == 2);
  leg_edge_.assign(nbottom_ + ntop_, -1);
}

int Web::disk_of_bottom(int i) const {
  require(0 <= i && i < nbottom_, Err::IndexOutOfRange, "bottom point out of range");
  return i;
}

int Web::disk_of_top(int i) const {
  require(0 <= i && i < ntop_, Err::IndexOutOfRange, "top point out of range");
  return nbottom_ + (ntop_ - 1 - i);
}

WebEnd Web::bottom(int i) const { return WebEnd{false, disk_of_bottom(i)}; }
WebEnd Web::top(int i) const { return WebEnd{false, disk_of_top(i)}; }
WebEnd Web::vert(int v) { return WebEnd{true, v}; }

int Web::add_source() {
  vkind_.push_back('o');
  rot_.emplace_back();
  return static_cast<int>(vkind_.size()) - 1;
}

int Web::add_sink() {
  vkind_.push_back('i');
  rot_.emplace_back();
  return static_cast<int>(vkind_.size()) - 1;
}

int Web::connect(WebEnd a, WebEnd b) {
  const int e = static_cast<int>(edges_.size());
  auto attach = [&](const WebEnd& we, int handle) {
    if (we.internal) {
      require(0 <= we.id && we.id < internal_count(), Err::IndexOutOfRange, "no such vertex");
      require(rot_[we.id].size() < 3, Err::BadInput, "trivalent vertex already has three edges");
      rot_[we.id].push_back(handle);
    } else {
      require(0 <= we.id && we.id < legs(), Err::IndexOutOfRange, "no such leg");
      require(leg_edge_[we.id] < 0, Err::BadInput, "leg already has an edge");
      leg_edge_[we.id] = handle;
    }
  };
  attach(a, 2 * e);
  attach(b, 2 * e + 1);
  edges_.push_back({a, b});
  return e;
}

void Web::set_rotation(int v, const std::vector<int>& handles) {
  require(0 <= v && v < internal_count(), Err::IndexOutOfRange, "no such vertex");
  std::vector<int> s1 = rot_[v], s2 = handles;
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  require(s1 == s2, Err::BadInput, "rotation must permute the existing handles");
  rot_[v] = handles;
}

WebEnd Web::end_of(int handle) const { return edges_[handle >> 1][handle & 1]; }

bool Web::is_tail(int handle) const {
  const WebEnd e = end_of(handle);
  return e.internal ? is_source(e.id) : leg_in_[e.id];
}

// ---------------------------------------------------------------------------
// Faces.  The boundary circle is closed with L virtual arcs (leg j to leg
// j+1 mod L); the face permutation is h -> rotation-successor of twin(h).
// Handle space: real handles 0..2E-1, arc handles 2E+2j / 2E+2j+1.
// ---------------------------------------------------------------------------

namespace {

struct FaceSystem {
  int real_handles = 0;
  std::vector<std::vector<int>> faces;  // orbits, each a list of handles
  std::vector<int> owner;               // handle -> cycle id (vertex or V+leg)
};

FaceSystem trace_faces(const Web& w) {
  const int E = w.edge_count();
  const int L = w.legs();
  const int V = w.internal_count();
  const int H = 2 * E + 2 * L;
  FaceSystem fs;
  fs.real_handles = 2 * E;

  // rotation cycles: internal vertices then legs
  std::vector<std::vector<int>> cyc(V + L);
  for (int v = 0; v < V; ++v) cyc[v] = w.rotation(v);
  for (int j = 0; j < L; ++j) {
    const int arc_next = 2 * E + 2 * j;
    const int arc_prev = 2 * E + 2 * ((j - 1 + L) % L) + 1;
    cyc[V + j] = {arc_next, w.leg_handle(j), arc_prev};
  }

  std::vector<int> nxt_in_cycle(H, -1);
  fs.owner.assign(H, -1);
  for (int c = 0; c < V + L; ++c) {
    const auto& cy = cyc[c];
    for (size_t k = 0; k < cy.size(); ++k) {
      nxt_in_cycle[cy[k]] = cy[(k + 1) % cy.size()];
      fs.owner[cy[k]] = c;
    }
  }

  std::vector<char> seen(H, 0);
  for (int h0 = 0; h0 < H; ++h0) {
    if (seen[h0] || fs.owner[h0] < 0) continue;
    std::vector<int> orbit;
    int h = h0;
    do {
      seen[h] = 1;
      orbit.push_back(h);
      h = nxt_in_cycle[h ^ 1];  // twin, then rotate
      require(h >= 0 && fs.owner[h] >= 0, Err::NonPlanar, "face tracing left the map");
    } while (h != h0);
    fs.faces.push_back(std::move(orbit));
  }
  return fs;
}

}  // namespace

WebDiag Web::validate() const {
  auto bad = [](const std::string& why) { return WebDiag{false, why}; };
  for (int j = 0; j < legs(); ++j)
    if (leg_edge_[j] < 0) return bad("boundary point " + std::to_string(j) + " has no edge");
  for (int v = 0; v < internal_count(); ++v)
    if (rot_[v].size() != 3)
      return bad("internal vertex " + std::to_string(v) + " is not trivalent");
  for (int e = 0; e < edge_count(); ++e) {
    const bool t0 = is_tail(2 * e), t1 = is_tail(2 * e + 1);
    if (t0 == t1)
      return bad("edge " + std::to_string(e) +
                 (t0 ? " has two tails (source-to-source or outward legs)"
                     : " has two heads (sink-to-sink or inward legs)"));
  }

  // Euler formula per component of the arc-augmented map.
  const int E = edge_count(), L = legs(), V = internal_count();
  std::vector<int> uf(V + L);
  for (size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  auto unite = [&](int a, int b) { uf[find(a)] = find(b); };
  auto cycle_of = [&](const WebEnd& we) { return we.internal ? we.id : V + we.id; };
  for (int e = 0; e < E; ++e) unite(cycle_of(edges_[e][0]), cycle_of(edges_[e][1]));
  for (int j = 0; j + 1 < L; ++j) unite(V + j, V + j + 1);
  if (L > 1) unite(V + L - 1, V);

  FaceSystem fs = trace_faces(*this);
  std::map<int, std::array<long, 3>> euler;  // component -> (V, E, F)
  for (size_t i = 0; i < uf.size(); ++i) euler[find(static_cast<int>(i))][0]++;
  for (int e = 0; e < E; ++e) euler[find(cycle_of(edges_[e][0]))][1]++;
  if (L > 0) euler[find(V)][1] += L;  // the boundary arcs
  for (const auto& f : fs.faces) euler[find(fs.owner[f[0]])][2]++;
  for (const auto& [c, vef] : euler)
    if (vef[0] - vef[1] + vef[2] != 2)
      return bad("embedding is not planar (Euler count " + std::to_string(vef[0]) + "-" +
                 std::to_string(vef[1]) + "+" + std::to_string(vef[2]) + " != 2)");
  return WebDiag{};
}

// ---------------------------------------------------------------------------
// Canonical key: breadth-first traversal rooted at the boundary, rotations
// read from the arrival handle.  Two webs get equal keys iff there is an
// isomorphism of the rotation systems fixing every boundary point.
// ---------------------------------------------------------------------------

std::string Web::canonical_key() const {
  std::vector<int> vid(internal_count(), -1);
  int next_id = 0;

  // Emits the rotation system reachable from one root into `os`, numbering
  // newly met vertices in discovery order and reading each rotation from the
  // arrival handle, so the string is invariant under renaming.
  auto sweep = [&](std::ostringstream& os, std::deque<std::pair<int, int>>& q) {
    auto code = [&](int handle_at_neighbor) {
      const WebEnd we = end_of(handle_at_neighbor);
      if (!we.internal) return "l" + std::to_string(we.id);
      if (vid[we.id] < 0) {
        vid[we.id] = next_id++;
        q.emplace_back(we.id, handle_at_neighbor);
      }
      return "v" + std::to_string(vid[we.id]);
    };
    while (!q.empty()) {
      auto [v, harr] = q.front();
      q.pop_front();
      os << (vkind_[v] == 'o' ? "S" : "K");
      const auto& rot = rot_[v];
      const auto it = std::find(rot.begin(), rot.end(), harr);
      require(it != rot.end(), Err::BadInput, "arrival handle missing from rotation");
      const int pos = static_cast<int>(it - rot.begin());
      for (int k = 1; k < static_cast<int>(rot.size()); ++k)
        os << code(rot[(pos + k) % rot.size()] ^ 1);
      os << ";";
    }
  };

  std::ostringstream os;
  os << "b";
  for (int s : bottom_sig_) os << s;
  os << "t";
  for (int s : top_sig_) os << s;
  os << ";";
  for (int j = 0; j < legs(); ++j) {
    require(leg_edge_[j] >= 0, Err::BadInput, "boundary point without edge has no key");
    std::deque<std::pair<int, int>> q;
    const WebEnd we = end_of(leg_edge_[j] ^ 1);
    os << "L";
    if (!we.internal) {
      os << "l" << we.id << ";";
    } else {
      if (vid[we.id] < 0) {
        vid[we.id] = next_id++;
        q.emplace_back(we.id, leg_edge_[j] ^ 1);
      }
      os << "v" << vid[we.id] << ";";
      sweep(os, q);
    }
  }

  // Closed components never met from the boundary: key each one by the
  // lexicographically least rooted sweep over all possible root handles,
  // then append the component keys in sorted order.
  if (next_id < internal_count()) {
    std::vector<std::string> comps;
    for (int v0 = 0; v0 < internal_count(); ++v0) {
      if (vid[v0] != -1) continue;
      // collect the component of v0
      std::vector<int> comp{v0};
      vid[v0] = -2;
      for (size_t i = 0; i < comp.size(); ++i)
        for (int h : rot_[comp[i]]) {
          const WebEnd other = end_of(h ^ 1);
          require(other.internal, Err::BadInput, "component both closed and boundary-attached");
          if (vid[other.id] == -1) {
            vid[other.id] = -2;
            comp.push_back(other.id);
          }
        }
      std::string best;
      for (int v : comp)
        for (int h : rot_[v]) {
          std::vector<int> saved(comp.size());
          for (size_t i = 0; i < comp.size(); ++i) saved[i] = vid[comp[i]];
          const int saved_next = next_id;
          std::ostringstream cs;
          std::deque<std::pair<int, int>> q;
          vid[v] = next_id++;
          q.emplace_back(v, h);
          sweep(cs, q);
          if (best.empty() || cs.str() < best) best = cs.str();
          for (size_t i = 0; i < comp.size(); ++i) vid[comp[i]] = saved[i];
          next_id = saved_next;
        }
      comps.push_back(std::move(best));
      for (int v : comp) vid[v] = -3;  // mark done
    }
    std::sort(comps.begin(), comps.end());
    for (const auto& c : comps) os << "|" << c;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Rebuild surgery: delete vertices/legs, weld the dangling edge ends into
// chains, merge each chain into a single edge; chains that close count as
// free loops (a factor of 3 each, returned to the caller).
// ---------------------------------------------------------------------------

namespace {

struct RebuildSpec {
  std::vector<char> dead_vert;
  std::vector<char> dead_leg;
  std::vector<int> dead_edges;             // deleted outright (collapsed faces)
  std::vector<std::pair<int, int>> welds;  // handle pairs, both ends dead
  std::vector<int> keep_legs;              // old disk ids in new disk order
  std::vector<int> nb_sig, nt_sig;
};

}  // namespace

struct WebOps {
  static std::pair<Web, int> rebuild(const Web& w, const RebuildSpec& s);
  static Web raw_union(const Web& lower, const Web& upper);
  static Web& poke(Web& w) { return w; }
  // direct access used by rebuild/raw_union
  static std::vector<std::array<WebEnd, 2>>& edges(Web& w) { return w.edges_; }
  static std::vector<std::vector<int>>& rot(Web& w) { return w.rot_; }
  static std::vector<int>& leg_edge(Web& w) { return w.leg_edge_; }
  static std::vector<char>& vkind(Web& w) { return w.vkind_; }
  static std::vector<bool>& leg_in(Web& w) { return w.leg_in_; }
  static void set_counts(Web& w, int nb, int nt) {
    w.nbottom_ = nb;
    w.ntop_ = nt;
  }
};

std::pair<Web, int> WebOps::rebuild(const Web& w, const RebuildSpec& s) {
  const int E = w.edge_count();
  auto end_dead = [&](int h) {
    const WebEnd we = w.end_of(h);
    return we.internal ? s.dead_vert[we.id] != 0 : s.dead_leg[we.id] != 0;
  };
  std::map<int, int> weld;
  for (const auto& [h1, h2] : s.welds) {
    require(end_dead(h1) && end_dead(h2), Err::BadInput, "weld must join removed ends");
    require(w.is_tail(h1) != w.is_tail(h2), Err::BadInput, "weld would join two arrow tails");
    require(!weld.count(h1) && !weld.count(h2), Err::BadInput, "weld lists a handle twice");
    weld[h1] = h2;
    weld[h2] = h1;
  }

  std::vector<char> edge_done(E, 0);
  for (int e : s.dead_edges) {
    require(end_dead(2 * e) && end_dead(2 * e + 1), Err::BadInput,
            "deleted edge still has a live end");
    edge_done[e] = 1;
  }
  std::vector<std::array<WebEnd, 2>> new_edges;         // old WebEnds, remapped below
  std::vector<int> hmap(2 * E, -1);                     // old handle -> new handle
  // surviving edges
  for (int e = 0; e < E; ++e) {
    if (end_dead(2 * e) || end_dead(2 * e + 1)) continue;
    edge_done[e] = 1;
    hmap[2 * e] = 2 * static_cast<int>(new_edges.size());
    hmap[2 * e + 1] = hmap[2 * e] + 1;
    new_edges.push_back({w.end_of(2 * e), w.end_of(2 * e + 1)});
  }
  // chains with two live ends
  for (int h0 = 0; h0 < 2 * E; ++h0) {
    const int e0 = h0 >> 1;
    if (edge_done[e0] || end_dead(h0) || !end_dead(h0 ^ 1)) continue;
    int cur = h0 ^ 1;
    edge_done[e0] = 1;
    while (true) {
      auto it = weld.find(cur);
      require(it != weld.end(), Err::BadInput, "dangling edge end without a weld");
      const int nxt = it->second ^ 1;
      edge_done[nxt >> 1] = 1;
      if (!end_dead(nxt)) {
        const int ne = static_cast<int>(new_edges.size());
        hmap[h0] = 2 * ne;
        hmap[nxt] = 2 * ne + 1;
        require(w.is_tail(h0) != w.is_tail(nxt), Err::BadInput,
                "merged chain would have two arrow tails");
        new_edges.push_back({w.end_of(h0), w.end_of(nxt)});
        break;
      }
      cur = nxt;
    }
  }
  // closed chains: free loops
  int loops = 0;
  for (int e = 0; e < E; ++e) {
    if (edge_done[e]) continue;
    ++loops;
    int cur = 2 * e;
    while (!edge_done[cur >> 1]) {
      edge_done[cur >> 1] = 1;
      cur = weld.at(cur ^ 1);
    }
  }

  Web nw(s.nb_sig, s.nt_sig);
  require(static_cast<int>(s.keep_legs.size()) == nw.legs(), Err::BadInput,
          "rebuild leg list does not match the new signature");
  std::vector<int> legmap(w.legs(), -1);
  for (int pos = 0; pos < static_cast<int>(s.keep_legs.size()); ++pos) {
    const int old = s.keep_legs[pos];
    require(!s.dead_leg[old], Err::BadInput, "kept leg was marked removed");
    require(WebOps::leg_in(nw)[pos] == w.leg_arrow_in(old), Err::BadInput,
            "leg orientation does not match the new signature");
    legmap[old] = pos;
  }
  std::vector<int> vmap(w.internal_count(), -1);
  for (int v = 0; v < w.internal_count(); ++v)
    if (!s.dead_vert[v]) vmap[v] = w.is_source(v) ? nw.add_source() : nw.add_sink();

  auto remap_end = [&](const WebEnd& we) {
    if (we.internal) {
      require(vmap[we.id] >= 0, Err::BadInput, "edge end at removed vertex survived");
      return WebEnd{true, vmap[we.id]};
    }
    require(legmap[we.id] >= 0, Err::BadInput, "edge end at removed leg survived");
    return WebEnd{false, legmap[we.id]};
  };
  auto& ne = WebOps::edges(nw);
  for (const auto& ends : new_edges) ne.push_back({remap_end(ends[0]), remap_end(ends[1])});
  auto& nrot = WebOps::rot(nw);
  for (int v = 0; v < w.internal_count(); ++v) {
    if (vmap[v] < 0) continue;
    for (int h : w.rotation(v)) {
      require(hmap[h] >= 0, Err::BadInput, "live vertex lost an edge in surgery");
      nrot[vmap[v]].push_back(hmap[h]);
    }
  }
  auto& nleg = WebOps::leg_edge(nw);
  for (int old = 0; old < w.legs(); ++old) {
    if (legmap[old] < 0) continue;
    const int h = w.leg_handle(old);
    require(h >= 0 && hmap[h] >= 0, Err::BadInput, "kept leg lost its edge in surgery");
    nleg[legmap[old]] = hmap[h];
  }
  return {std::move(nw), loops};
}

Web WebOps::raw_union(const Web& lower, const Web& upper) {
  Web u({}, {});
  const int LL = lower.legs(), EL = lower.edge_count(), VL = lower.internal_count();
  WebOps::set_counts(u, LL + upper.legs(), 0);
  auto& lin = WebOps::leg_in(u);
  lin.resize(LL + upper.legs());
  for (int j = 0; j < LL; ++j) lin[j] = lower.leg_arrow_in(j);
  for (int j = 0; j < upper.legs(); ++j) lin[LL + j] = upper.leg_arrow_in(j);
  auto& vk = WebOps::vkind(u);
  auto& rt = WebOps::rot(u);
  auto& eg = WebOps::edges(u);
  auto& le = WebOps::leg_edge(u);
  le.assign(LL + upper.legs(), -1);
  for (int v = 0; v < VL; ++v) {
    vk.push_back(lower.is_source(v) ? 'o' : 'i');
    rt.push_back(lower.rotation(v));
  }
  for (int v = 0; v < upper.internal_count(); ++v) {
    vk.push_back(upper.is_source(v) ? 'o' : 'i');
    std::vector<int> r = upper.rotation(v);
    for (int& h : r) h += 2 * EL;
    rt.push_back(std::move(r));
  }
  auto shift_end = [&](const WebEnd& we, bool from_upper) {
    if (we.internal) return WebEnd{true, we.id + (from_upper ? VL : 0)};
    return WebEnd{false, we.id + (from_upper ? LL : 0)};
  };
  for (int e = 0; e < EL; ++e)
    eg.push_back({shift_end(lower.end_of(2 * e), false), shift_end(lower.end_of(2 * e + 1), false)});
  for (int e = 0; e < upper.edge_count(); ++e)
    eg.push_back({shift_end(upper.end_of(2 * e), true), shift_end(upper.end_of(2 * e + 1), true)});
  for (int j = 0; j < LL; ++j) le[j] = lower.leg_handle(j);
  for (int j = 0; j < upper.legs(); ++j) le[LL + j] = upper.leg_handle(j) + 2 * EL;
  return u;
}

bool Web::is_reduced() const {
  FaceSystem fs = trace_faces(*this);
  for (const auto& f : fs.faces) {
    bool internal = true;
    for (int h : f)
      if (h >= fs.real_handles) internal = false;
    if (!internal) continue;
    if (f.size() == 2 && (f[0] >> 1) != (f[1] >> 1)) return false;
    if (f.size() == 4) {
      std::set<int> es, vs;
      for (int h : f) {
        es.insert(h >> 1);
        vs.insert(fs.owner[h]);
      }
      if (es.size() == 4 && vs.size() == 4) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Concatenation (strip product)
// ---------------------------------------------------------------------------

std::pair<Web, Rat> concatenate(const Web& upper, const Web& lower) {
  require(lower.top_sig() == upper.bottom_sig(), Err::BoundaryMismatch,
          "top of the lower web does not match bottom of the upper web");
  const int k = lower.top_count();
  const int LL = lower.legs();
  Web u = WebOps::raw_union(lower, upper);

  RebuildSpec spec;
  spec.dead_vert.assign(u.internal_count(), 0);
  spec.dead_leg.assign(u.legs(), 0);
  for (int i = 0; i < k; ++i) {
    const int dl = lower.disk_of_top(i);
    const int du = LL + upper.disk_of_bottom(i);
    spec.dead_leg[dl] = spec.dead_leg[du] = 1;
    spec.welds.emplace_back(u.leg_handle(dl), u.leg_handle(du));
  }
  spec.nb_sig = lower.bottom_sig();
  spec.nt_sig = upper.top_sig();
  for (int j = 0; j < lower.bottom_count(); ++j) spec.keep_legs.push_back(j);
  for (int t = 0; t < upper.top_count(); ++t)
    spec.keep_legs.push_back(LL + upper.bottom_count() + t);
  auto [web, loops] = WebOps::rebuild(u, spec);
  Rat fac(1);
  for (int i = 0; i < loops; ++i) fac *= 3;
  return {std::move(web), fac};
}

WebSum concatenate(const WebSum& upper, const WebSum& lower) {
  WebSum out;
  for (const auto& [ku, tu] : upper.terms())
    for (const auto& [kl, tl] : lower.terms()) {
      auto [web, fac] = concatenate(tu.first, tl.first);
      out.add(web, tu.second * tl.second * fac);
    }
  return out;
}

// ---------------------------------------------------------------------------
// WebSum
// ---------------------------------------------------------------------------

WebSum WebSum::of(const Web& w, const Rat& c) {
  WebSum s;
  s.add(w, c);
  return s;
}

void WebSum::add(const Web& w, const Rat& c) {
  if (c == 0) return;
  std::string key = w.canonical_key();
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), std::make_pair(w, c));
    return;
  }
  it->second.second += c;
  if (it->second.second == 0) terms_.erase(it);
}

void WebSum::add_scaled(const WebSum& other, const Rat& c) {
  for (const auto& [k, t] : other.terms_) add(t.first, t.second * c);
}

WebSum& WebSum::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, t] : terms_) t.second *= c;
  return *this;
}

bool WebSum::operator==(const WebSum& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [k, t] : terms_) {
    if (k != it->first || t.second != it->second.second) return false;
    ++it;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Kuperberg reduction
// ---------------------------------------------------------------------------

namespace {

struct ReducibleFace {
  int kind;                 // 2 digon, 4 square
  std::vector<int> handles; // face orbit
};

std::vector<ReducibleFace> reducible_faces(const FaceSystem& fs) {
  std::vector<ReducibleFace> out;
  for (const auto& f : fs.faces) {
    bool internal = true;
    for (int h : f)
      if (h >= fs.real_handles) internal = false;
    if (!internal || (f.size() != 2 && f.size() != 4)) continue;
    std::set<int> es, vs;
    for (int h : f) {
      es.insert(h >> 1);
      vs.insert(fs.owner[h]);
    }
    if (es.size() != f.size() || vs.size() != f.size()) continue;  // degenerate; skip
    out.push_back({static_cast<int>(f.size()), f});
  }
  std::sort(out.begin(), out.end(), [](const ReducibleFace& a, const ReducibleFace& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return *std::min_element(a.handles.begin(), a.handles.end()) <
           *std::min_element(b.handles.begin(), b.handles.end());
  });
  return out;
}

// The handle at vertex v that is not among the face handles there.
int third_handle(const Web& w, int v, const std::set<int>& face_handles) {
  for (int h : w.rotation(v))
    if (!face_handles.count(h)) return h;
  fail(Err::BadInput, "face occupies all slots of a vertex");
}

std::pair<Web, int> collapse_digon(const Web& w, const ReducibleFace& f) {
  const int v0 = w.end_of(f.handles[0]).id;
  const int v1 = w.end_of(f.handles[1]).id;
  std::set<int> fh = {f.handles[0], f.handles[1], f.handles[0] ^ 1, f.handles[1] ^ 1};
  RebuildSpec spec;
  spec.dead_vert.assign(w.internal_count(), 0);
  spec.dead_leg.assign(w.legs(), 0);
  spec.dead_vert[v0] = spec.dead_vert[v1] = 1;
  spec.dead_edges = {f.handles[0] >> 1, f.handles[1] >> 1};
  spec.welds.emplace_back(third_handle(w, v0, fh), third_handle(w, v1, fh));
  spec.nb_sig = w.bottom_sig();
  spec.nt_sig = w.top_sig();
  for (int j = 0; j < w.legs(); ++j) spec.keep_legs.push_back(j);
  return WebOps::rebuild(w, spec);
}

std::pair<Web, int> resolve_square(const Web& w, const ReducibleFace& f, int which) {
  std::set<int> fh;
  for (int h : f.handles) {
    fh.insert(h);
    fh.insert(h ^ 1);
  }
  std::array<int, 4> t{};
  RebuildSpec spec;
  spec.dead_vert.assign(w.internal_count(), 0);
  spec.dead_leg.assign(w.legs(), 0);
  for (int i = 0; i < 4; ++i) {
    const int v = w.end_of(f.handles[i]).id;
    spec.dead_vert[v] = 1;
    spec.dead_edges.push_back(f.handles[i] >> 1);
    t[i] = third_handle(w, v, fh);
  }
  if (which == 0) {
    spec.welds.emplace_back(t[0], t[1]);
    spec.welds.emplace_back(t[2], t[3]);
  } else {
    spec.welds.emplace_back(t[1], t[2]);
    spec.welds.emplace_back(t[3], t[0]);
  }
  spec.nb_sig = w.bottom_sig();
  spec.nt_sig = w.top_sig();
  for (int j = 0; j < w.legs(); ++j) spec.keep_legs.push_back(j);
  return WebOps::rebuild(w, spec);
}

WebSum reduce_impl(const Web& w0, const Rat& c0, std::uint64_t* rng) {
  WebSum out;
  std::vector<std::pair<Web, Rat>> stack{{w0, c0}};
  while (!stack.empty()) {
    auto [w, c] = std::move(stack.back());
    stack.pop_back();
    WebDiag d = w.validate();
    require(d.ok, Err::NonPlanar, "reduce needs a valid planar web: " + d.reason);
    FaceSystem fs = trace_faces(w);
    auto red = reducible_faces(fs);
    if (red.empty()) {
      out.add(w, c);
      continue;
    }
    const ReducibleFace& pick =
        rng ? red[static_cast<size_t>(splitmix64(*rng) % red.size())] : red.front();
    auto push = [&](std::pair<Web, int>&& res, const Rat& scale) {
      Rat cc = c * scale;
      for (int i = 0; i < res.second; ++i) cc *= 3;
      stack.emplace_back(std::move(res.first), cc);
    };
    if (pick.kind == 2) {
      push(collapse_digon(w, pick), Rat(2));
    } else {
      push(resolve_square(w, pick, 0), Rat(1));
      push(resolve_square(w, pick, 1), Rat(1));
    }
  }
  return out;
}

}  // namespace

WebSum reduce(const Web& w) { return reduce_impl(w, Rat(1), nullptr); }

WebSum reduce(const WebSum& ws) {
  WebSum out;
  for (const auto& [k, t] : ws.terms()) out.add_scaled(reduce_impl(t.first, t.second, nullptr), Rat(1));
  return out;
}

WebSum reduce_randomized(const Web& w, std::uint64_t seed) {
  std::uint64_t state = seed * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL;
  return reduce_impl(w, Rat(1), &state);
}

WebSum mul(const WebSum& upper, const WebSum& lower) {
  return reduce(concatenate(upper, lower));
}

// ---------------------------------------------------------------------------
// Factories
// ---------------------------------------------------------------------------

Web identity_web(const std::vector<int>& sig) {
  Web w(sig, sig);
  for (int i = 0; i < static_cast<int>(sig.size()); ++i) w.connect(w.bottom(i), w.top(i));
  return w;
}

Web h_web(int i, int n) {
  require(1 <= i && i < n, Err::IndexOutOfRange, "strand index out of range");
  std::vector<int> sig(n, 1);
  Web w(sig, sig);
  const int a = i - 1, b = i;  // 0-based strand positions
  for (int k = 0; k < a; ++k) w.connect(w.bottom(k), w.top(k));
  const int snk = w.add_sink();
  const int src = w.add_source();
  w.connect(w.bottom(a), Web::vert(snk));
  w.connect(w.bottom(b), Web::vert(snk));
  w.connect(Web::vert(src), w.top(b));
  w.connect(Web::vert(src), w.top(a));
  w.connect(Web::vert(src), Web::vert(snk));
  for (int k = b + 1; k < n; ++k) w.connect(w.bottom(k), w.top(k));
  return w;
}

WebSum tau_image(int i, int n) {
  require(1 <= i && i < n, Err::IndexOutOfRange, "generator index out of range");
  WebSum s = WebSum::of(identity_web(std::vector<int>(n, 1)));
  s.add(h_web(i, n), Rat(-1));
  return s;
}

// ---------------------------------------------------------------------------
// Tensor evaluation
// ---------------------------------------------------------------------------

namespace {

// State sum with every boundary leg's edge color pinned: the number of proper
// edge colorings extending the pinned legs, i.e. colorings in {1,2,3} whose
// three colors are pairwise distinct around every internal vertex.  Counting
// colorings (weight +1 each) rather than summing signed epsilon products is
// what makes the change-of-basis matrix nonnegative; the skein relations
// (loop 3, digon 2, square as a two-term sum) hold for the count exactly as
// for the signed sum, which assert_spider_identities certifies at runtime.
long eval_colored(const Web& w, const std::vector<int>& leg_color) {
  const int E = w.edge_count();
  require(E <= 30, Err::TooLarge, "tensor evaluation supports at most 30 edges");
  std::vector<int> color(E, 0);
  for (int j = 0; j < w.legs(); ++j) {
    const int e = w.leg_handle(j) >> 1;
    const int c = leg_color[j];
    if (color[e] != 0 && color[e] != c) return 0;  // a boundary-to-boundary arc
    color[e] = c;
  }
  std::vector<int> free_edges;
  for (int e = 0; e < E; ++e)
    if (color[e] == 0) free_edges.push_back(e);

  // per-vertex bookkeeping for pruning
  const int V = w.internal_count();
  std::vector<int> remaining(V, 0);
  for (int v = 0; v < V; ++v)
    for (int h : w.rotation(v))
      if (color[h >> 1] == 0) remaining[v]++;

  auto vertex_factor = [&](int v) -> long {
    const auto& rot = w.rotation(v);
    const int a = color[rot[0] >> 1], b = color[rot[1] >> 1], c = color[rot[2] >> 1];
    return (a != b && b != c && a != c) ? 1 : 0;
  };

  long total = 0;
  // Depth-first assignment with dead-branch pruning at completed vertices.
  std::function<void(size_t, long)> go = [&](size_t idx, long weight) {
    if (weight == 0) return;
    if (idx == free_edges.size()) {
      total += weight;
      return;
    }
    const int e = free_edges[idx];
    for (int c = 1; c <= 3; ++c) {
      color[e] = c;
      long wgt = weight;
      bool dead = false;
      std::array<int, 2> touched{-1, -1};
      for (int side = 0; side < 2 && !dead; ++side) {
        const WebEnd we = w.end_of(2 * e + side);
        if (!we.internal) continue;
        touched[side] = we.id;
        if (--remaining[we.id] == 0) {
          const long f = vertex_factor(we.id);
          if (f == 0)
            dead = true;
          else
            wgt *= f;
        }
      }
      if (!dead) go(idx + 1, wgt);
      for (int side = 1; side >= 0; --side)
        if (touched[side] >= 0) ++remaining[touched[side]];
      color[e] = 0;
    }
  };
  // vertices already complete from the pinned legs
  long base = 1;
  for (int v = 0; v < V; ++v)
    if (remaining[v] == 0) base *= vertex_factor(v);
  go(0, base);
  return total;
}

std::once_flag g_spider_once;

}  // namespace

void assert_spider_identities() {
  auto check = [](const Web& w, const char* name) {
    WebDiag d = w.validate();
    if (!d.ok) throw std::logic_error(std::string("spider fixture invalid (") + name + "): " + d.reason);
    WebSum r = reduce(w);
    const int L = w.legs();
    std::vector<int> colors(L, 1);
    while (true) {
      long lhs = eval_colored(w, colors);
      Rat rhs(0);
      for (const auto& [k, t] : r.terms()) rhs += t.second * Rat(eval_colored(t.first, colors));
      if (Rat(lhs) != rhs)
        throw std::logic_error(std::string("state sum violates the reduction relations (") + name +
                               ")");
      int p = 0;
      while (p < L && colors[p] == 3) colors[p++] = 1;
      if (p == L) break;
      colors[p]++;
    }
  };

  // digon between a source and a sink, mirrored rotations
  {
    Web d({1, 2}, {});
    const int snk = d.add_sink(), src = d.add_source();
    d.connect(Web::vert(src), d.bottom(1));          // external of the source
    d.connect(Web::vert(src), Web::vert(snk));       // digon edge 1
    d.connect(d.bottom(0), Web::vert(snk));          // external of the sink
    d.connect(Web::vert(src), Web::vert(snk));       // digon edge 2
    check(d, "digon");
  }
  // square with externals, alternating corners
  {
    Web s({1, 2, 1, 2}, {});
    const int A = s.add_source(), B = s.add_sink(), C = s.add_source(), D = s.add_sink();
    const int eAB = s.connect(Web::vert(A), Web::vert(B));
    const int eAD = s.connect(Web::vert(A), Web::vert(D));
    const int exA = s.connect(Web::vert(A), s.bottom(1));
    const int eCB = s.connect(Web::vert(C), Web::vert(B));
    const int exB = s.connect(s.bottom(2), Web::vert(B));
    const int exC = s.connect(Web::vert(C), s.bottom(3));
    const int eCD = s.connect(Web::vert(C), Web::vert(D));
    const int exD = s.connect(s.bottom(0), Web::vert(D));
    s.set_rotation(A, {2 * eAB, 2 * eAD, 2 * exA});
    s.set_rotation(B, {2 * eCB + 1, 2 * eAB + 1, 2 * exB + 1});
    s.set_rotation(C, {2 * exC, 2 * eCD, 2 * eCB});
    s.set_rotation(D, {2 * eCD + 1, 2 * exD + 1, 2 * eAD + 1});
    check(s, "square");
  }
  // floating theta next to a strand: exercises digon plus free-loop counting
  // (the theta must reduce to the scalar 2 x 3 = 6 times the bare strand)
  {
    Web t({1, 2}, {});
    t.connect(t.bottom(0), t.bottom(1));
    const int src = t.add_source(), snk = t.add_sink();
    const int e0 = t.connect(Web::vert(src), Web::vert(snk));
    const int e1 = t.connect(Web::vert(src), Web::vert(snk));
    const int e2 = t.connect(Web::vert(src), Web::vert(snk));
    t.set_rotation(src, {2 * e0, 2 * e2, 2 * e1});
    check(t, "theta");
  }
}

Int tensor_value(const Web& lam, const Filling& T, const Signature& sig) {
  std::call_once(g_spider_once, assert_spider_identities);
  require(lam.top_count() == 0, Err::ContentMismatch,
          "tensor evaluation needs a module web (no top boundary)");
  require(lam.bottom_sig() == sig.s, Err::ContentMismatch,
          "web boundary does not match the signature");
  {
    WebDiag d = lam.validate();
    require(d.ok, Err::BadInput, "invalid web: " + d.reason);
  }
  require(T.shape() == sig.pi(), Err::ContentMismatch, "tableau shape must be pi");
  require(T.is_row_strict(), Err::ContentMismatch, "tableau must be row-strict");
  {
    std::vector<int> content = T.content();
    content.resize(sig.d(), 0);
    require(content == sig.s, Err::ContentMismatch, "tableau content must match the signature");
  }

  const auto K = row_number_tuples(T);
  std::vector<int> colors(sig.d());
  for (int i = 0; i < sig.d(); ++i) {
    if (sig.s[i] == 1) {
      colors[i] = K[i][0];
    } else {
      // A two-valent boundary point carries the pair of rows of its entry;
      // in the coloring model its single strand takes the complementary color.
      const int k1 = K[i][0], k2 = K[i][1];
      require(k1 != k2, Err::ContentMismatch, "repeated row pair at a two-valent point");
      colors[i] = 6 - k1 - k2;
    }
  }
  return Int(eval_colored(lam, colors));
}

// ---------------------------------------------------------------------------
// Harvest: enumerate reduced module webs by growth moves on a strip frontier.
// ---------------------------------------------------------------------------

namespace {

Web cap_gadget(const std::vector<int>& front, int i) {
  std::vector<int> top;
  for (int j = 0; j < static_cast<int>(front.size()); ++j)
    if (j != i && j != i + 1) top.push_back(front[j]);
  Web w(front, top);
  for (int j = 0; j < i; ++j) w.connect(w.bottom(j), w.top(j));
  w.connect(w.bottom(i), w.bottom(i + 1));
  for (int j = i + 2; j < static_cast<int>(front.size()); ++j)
    w.connect(w.bottom(j), w.top(j - 2));
  return w;
}

Web join_gadget(const std::vector<int>& front, int i) {
  std::vector<int> top;
  for (int j = 0; j < static_cast<int>(front.size()); ++j) {
    if (j == i)
      top.push_back(front[i] == 1 ? 2 : 1);
    else if (j != i + 1)
      top.push_back(front[j]);
  }
  Web w(front, top);
  for (int j = 0; j < i; ++j) w.connect(w.bottom(j), w.top(j));
  const int v = front[i] == 1 ? w.add_sink() : w.add_source();
  w.connect(w.bottom(i), Web::vert(v));
  w.connect(w.bottom(i + 1), Web::vert(v));
  w.connect(w.top(i), Web::vert(v));
  for (int j = i + 2; j < static_cast<int>(front.size()); ++j)
    w.connect(w.bottom(j), w.top(j - 1));
  return w;
}

Web cup_gadget(const std::vector<int>& front, int pos, bool one_first) {
  std::vector<int> top;
  for (int j = 0; j <= static_cast<int>(front.size()); ++j) {
    if (j == pos) {
      top.push_back(one_first ? 1 : 2);
      top.push_back(one_first ? 2 : 1);
    }
    if (j < static_cast<int>(front.size())) top.push_back(front[j]);
  }
  Web w(front, top);
  for (int j = 0; j < pos; ++j) w.connect(w.bottom(j), w.top(j));
  w.connect(w.top(pos), w.top(pos + 1));
  for (int j = pos; j < static_cast<int>(front.size()); ++j)
    w.connect(w.bottom(j), w.top(j + 2));
  return w;
}

}  // namespace

ReducedBasis harvest_reduced(const Signature& sig) {
  const int kost = kostka(sig.pi(), sig);
  ReducedBasis out;
  out.sig = sig;
  if (kost == 0) return out;

  constexpr long kNodeBudget = 60000;
  constexpr int kCupBudget = 2;

  std::map<std::string, Web> found;
  std::map<std::string, int> seen;  // partial key -> fewest cups used
  std::deque<std::pair<Web, int>> queue;
  Web start = identity_web(sig.s);
  seen[start.canonical_key()] = 0;
  queue.emplace_back(std::move(start), 0);

  long nodes = 0;
  while (!queue.empty() && static_cast<int>(found.size()) < kost && nodes < kNodeBudget) {
    auto [w, cups] = std::move(queue.front());
    queue.pop_front();
    ++nodes;
    const std::vector<int> front = w.top_sig();
    const int k = static_cast<int>(front.size());
    if (k == 0) {
      const WebSum red = reduce(w);
      for (const auto& [key, term] : red.terms()) found.try_emplace(key, term.first);
      continue;
    }
    auto push = [&](const Web& gadget, int cups2) {
      auto [res, fac] = concatenate(gadget, w);
      (void)fac;  // free-loop factors scale coefficients, not which webs exist
      const std::string key = res.canonical_key();
      auto it = seen.find(key);
      if (it != seen.end() && it->second <= cups2) return;
      seen[key] = cups2;
      queue.emplace_back(std::move(res), cups2);
    };
    for (int i = 0; i + 1 < k; ++i) {
      if (front[i] != front[i + 1])
        push(cap_gadget(front, i), cups);
      else
        push(join_gadget(front, i), cups);
    }
    if (cups < kCupBudget)
      for (int pos = 0; pos <= k; ++pos) {
        push(cup_gadget(front, pos, true), cups + 1);
        push(cup_gadget(front, pos, false), cups + 1);
      }
  }
  require(static_cast<int>(found.size()) >= kost, Err::HarvestIncomplete,
          "generation budget exhausted with " + std::to_string(found.size()) + " of " +
              std::to_string(kost) + " reduced webs");
  if (static_cast<int>(found.size()) > kost)
    throw std::logic_error("harvest found more reduced webs than the Kostka count");

  // Order the columns so the change-of-basis matrix is unit lower triangular.
  const auto tabs = enumerate_tableaux(sig.pi(), sig, TabKind::RSYT);
  require(static_cast<int>(tabs.size()) == kost, Err::BadInput, "tableau count mismatch");
  std::vector<std::pair<int, Web>> order;  // (first nonzero row, web)
  for (const auto& [key, web] : found) {
    int fnz = -1;
    Int at_fnz(0);
    for (int t = 0; t < kost && fnz < 0; ++t) {
      Int v = tensor_value(web, tabs[t], sig);
      if (v != 0) {
        fnz = t;
        at_fnz = v;
      }
    }
    require(fnz >= 0, Err::SingularM, "a harvested web vanishes on every tableau");
    require(at_fnz == 1, Err::SingularM, "leading tensor value is not 1");
    order.emplace_back(fnz, web);
  }
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (int j = 0; j < kost; ++j) {
    require(order[j].first == j, Err::SingularM,
            "no unit-lower-triangularizing order exists for the harvested webs");
    out.webs.push_back(std::move(order[j].second));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Change of basis
// ---------------------------------------------------------------------------

ChangeOfBasis matrix_M(const Signature& sig) {
  ChangeOfBasis cb;
  cb.basis = harvest_reduced(sig);
  cb.tableaux = enumerate_tableaux(sig.pi(), sig, TabKind::RSYT);
  const int n = static_cast<int>(cb.tableaux.size());
  cb.M.assign(n, std::vector<Int>(n, Int(0)));
  std::string error;
#pragma omp parallel for collapse(2) schedule(dynamic) if (g_parallel_webs && n > 1)
  for (int t = 0; t < n; ++t)
    for (int l = 0; l < n; ++l) {
      try {
        cb.M[t][l] = tensor_value(cb.basis.webs[l], cb.tableaux[t], sig);
      } catch (const std::exception& ex) {
#pragma omp critical
        error = ex.what();
      }
    }
  require(error.empty(), Err::BadInput, "tensor evaluation failed: " + error);
  for (int t = 0; t < n; ++t) {
    require(cb.M[t][t] == 1, Err::SingularM, "diagonal entry is not 1");
    for (int l = t + 1; l < n; ++l)
      require(cb.M[t][l] == 0, Err::SingularM, "matrix is not lower triangular");
  }
  cb.Minv = unit_lower_inverse(cb.M);
  return cb;
}

std::vector<std::vector<Int>> pure_partition_coeffs(const Signature& sig) {
  return matrix_M(sig).Minv;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

std::string Web::to_json() const {
  nlohmann::json j;
  j["boundary"] = nlohmann::json::array();
  for (int i = 0; i < nbottom_; ++i)
    j["boundary"].push_back({bottom_sig_[i], 0, leg_edge_[disk_of_bottom(i)]});
  for (int i = 0; i < ntop_; ++i)
    j["boundary"].push_back({top_sig_[i], 1, leg_edge_[disk_of_top(i)]});
  j["vertices"] = nlohmann::json::array();
  for (int v = 0; v < internal_count(); ++v)
    j["vertices"].push_back({{"kind", is_source(v) ? "source" : "sink"}, {"rotation", rot_[v]}});
  j["edges"] = nlohmann::json::array();
  for (int e = 0; e < edge_count(); ++e) {
    const int tail = is_tail(2 * e) ? 2 * e : 2 * e + 1;
    j["edges"].push_back({tail, tail ^ 1, 1});
  }
  return j.dump();
}

Web Web::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& ex) {
    fail(Err::BadInput, std::string("invalid JSON: ") + ex.what());
  }
  require(j.contains("boundary") && j.contains("vertices") && j.contains("edges"), Err::BadInput,
          "web JSON needs boundary, vertices and edges");
  std::vector<int> bs, ts;
  std::vector<std::pair<int, int>> leg_handles;  // (line, handle) in listed order
  for (const auto& b : j["boundary"]) {
    require(b.is_array() && b.size() == 3, Err::BadInput, "boundary entries are [s, line, handle]");
    const int s = b[0].get<int>(), line = b[1].get<int>(), h = b[2].get<int>();
    require(line == 0 || line == 1, Err::BadInput, "boundary line must be 0 or 1");
    (line == 0 ? bs : ts).push_back(s);
    leg_handles.emplace_back(line, h);
  }
  Web w(bs, ts);
  const int E = static_cast<int>(j["edges"].size());
  constexpr int kFree = std::numeric_limits<int>::min();
  std::vector<int> owner(2 * E, kFree);  // vertex id, or -1-leg disk id
  {
    int ib = 0, it = 0;
    for (const auto& [line, h] : leg_handles) {
      require(0 <= h && h < 2 * E, Err::BadInput, "boundary handle out of range");
      const int disk = line == 0 ? w.disk_of_bottom(ib++) : w.disk_of_top(it++);
      require(owner[h] == kFree, Err::BadInput, "handle used twice");
      owner[h] = -1 - disk;
    }
  }
  for (const auto& vj : j["vertices"]) {
    require(vj.contains("kind") && vj.contains("rotation"), Err::BadInput,
            "vertex entries need kind and rotation");
    const std::string kind = vj["kind"].get<std::string>();
    require(kind == "source" || kind == "sink", Err::BadInput, "vertex kind unknown");
    const int v = kind == "source" ? w.add_source() : w.add_sink();
    for (const auto& hj : vj["rotation"]) {
      const int h = hj.get<int>();
      require(0 <= h && h < 2 * E, Err::BadInput, "rotation handle out of range");
      require(owner[h] == kFree, Err::BadInput, "handle used twice");
      owner[h] = v;
    }
  }
  for (int h = 0; h < 2 * E; ++h)
    require(owner[h] != kFree, Err::BadInput, "handle " + std::to_string(h) + " unattached");

  auto end_from = [&](int h) {
    return owner[h] >= 0 ? WebEnd{true, owner[h]} : WebEnd{false, -1 - owner[h]};
  };
  auto& eg = WebOps::edges(w);
  for (int e = 0; e < E; ++e) {
    const auto& ej = j["edges"][e];
    require(ej.is_array() && ej.size() >= 2, Err::BadInput, "edge entries are [h1, h2, orient]");
    const int h1 = ej[0].get<int>(), h2 = ej[1].get<int>();
    require((h1 >> 1) == e && (h2 >> 1) == e && (h1 ^ 1) == h2, Err::BadInput,
            "edge " + std::to_string(e) + " must own handles 2e and 2e+1");
    eg.push_back({end_from(2 * e), end_from(2 * e + 1)});
  }
  auto& rt = WebOps::rot(w);
  for (int v = 0; v < w.internal_count(); ++v) rt[v].clear();
  for (int v = 0, idx = 0; v < w.internal_count(); ++v, ++idx)
    for (const auto& hj : j["vertices"][idx]["rotation"]) rt[v].push_back(hj.get<int>());
  auto& le = WebOps::leg_edge(w);
  for (int h = 0; h < 2 * E; ++h)
    if (owner[h] < 0) le[-1 - owner[h]] = h;
  // declared orientations must match the derived ones
  for (int e = 0; e < E; ++e) {
    const int h1 = j["edges"][e][0].get<int>();
    require(w.is_tail(h1) && !w.is_tail(h1 ^ 1), Err::BadInput,
            "edge " + std::to_string(e) + " orientation contradicts its endpoints");
  }
  WebDiag d = w.validate();
  require(d.ok, Err::BadInput, "web JSON describes an invalid web: " + d.reason);
  return w;
}

}  // namespace w3b
