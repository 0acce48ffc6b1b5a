#pragma once
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "w3b/combinatorics.hpp"
#include "w3b/rational.hpp"

namespace w3b {

// ---------------------------------------------------------------------------
// Webs: oriented planar bipartite graphs in a disk whose boundary carries
// univalent marked points ("legs") and whose interior vertices are trivalent
// sources or sinks.  Strip webs have legs on two lines (bottom, top); module
// webs have all legs on one line.  Legs are stored in counterclockwise disk
// order: bottom points left to right, then top points right to left.
//
// The embedding is combinatorial: every internal vertex stores its incident
// edge ends in counterclockwise rotation order, and faces are traced from the
// rotation system with virtual arcs closing the boundary circle.  Planarity
// is the Euler-formula check on that traced map.
// ---------------------------------------------------------------------------

// One end of an edge: either a boundary leg or a slot of an internal vertex.
struct WebEnd {
  bool internal = false;
  int id = -1;
  bool operator==(const WebEnd&) const = default;
};

struct WebDiag {
  bool ok = true;
  std::string reason;
};

class Web {
public:
  Web() = default;
  // Signatures are words over {1,2}.  Arrow conventions: a bottom leg with
  // s=1 (and a top leg with s=2) points into the web; the other cases point
  // out toward the boundary.  Module webs pass an empty top signature.
  Web(std::vector<int> bottom_sig, std::vector<int> top_sig);

  // -- builder ---------------------------------------------------------------
  int add_source();  // all three edges oriented away from the vertex
  int add_sink();    // all three edges oriented toward the vertex
  // Endpoint designators.  Marked-point indices are 0-based within their line.
  WebEnd bottom(int i) const;
  WebEnd top(int i) const;
  static WebEnd vert(int v);
  // Adds an edge.  Internal slots fill in call order, which must be the
  // counterclockwise rotation order of the intended drawing.
  int connect(WebEnd a, WebEnd b);
  // Re-orders the rotation at internal vertex v (a permutation of its current
  // handles).  Needed when no single edge-creation order can realize both
  // endpoints' counterclockwise orders, e.g. the mirrored ends of a multi-edge.
  void set_rotation(int v, const std::vector<int>& handles);

  // -- shape -----------------------------------------------------------------
  int legs() const { return static_cast<int>(leg_in_.size()); }
  int bottom_count() const { return nbottom_; }
  int top_count() const { return ntop_; }
  const std::vector<int>& bottom_sig() const { return bottom_sig_; }
  const std::vector<int>& top_sig() const { return top_sig_; }
  bool leg_arrow_in(int disk) const { return leg_in_[disk]; }
  int disk_of_bottom(int i) const;
  int disk_of_top(int i) const;

  int internal_count() const { return static_cast<int>(vkind_.size()); }
  bool is_source(int v) const { return vkind_[v] == 'o'; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  // -- half-edge access (handle h = 2*edge + side) ---------------------------
  WebEnd end_of(int handle) const;
  const std::vector<int>& rotation(int v) const { return rot_[v]; }
  int leg_handle(int disk) const { return leg_edge_[disk]; }
  // True if the arrow leaves this end (source vertex or inward leg).
  bool is_tail(int handle) const;

  // -- structure checks and keys ----------------------------------------------
  WebDiag validate() const;
  // Canonical serialization of the rotation system rooted at the boundary;
  // equal keys mean equal webs up to boundary-fixing isotopy.  Requires every
  // vertex to be reachable from some leg.
  std::string canonical_key() const;
  bool is_reduced() const;

  std::string to_json() const;
  static Web from_json(const std::string& text);

private:
  friend struct WebOps;
  int nbottom_ = 0, ntop_ = 0;
  std::vector<int> bottom_sig_, top_sig_;
  std::vector<bool> leg_in_;
  std::vector<char> vkind_;               // 'o' source, 'i' sink
  std::vector<std::array<WebEnd, 2>> edges_;
  std::vector<std::vector<int>> rot_;     // per internal vertex: handles, ccw
  std::vector<int> leg_edge_;             // per leg: handle or -1
};

// Formal rational combination of webs, keyed by canonical form.
class WebSum {
public:
  WebSum() = default;
  static WebSum of(const Web& w, const Rat& c = Rat(1));

  void add(const Web& w, const Rat& c);
  void add_scaled(const WebSum& other, const Rat& c);
  WebSum& operator*=(const Rat& c);

  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const std::map<std::string, std::pair<Web, Rat>>& terms() const { return terms_; }
  bool operator==(const WebSum& o) const;

private:
  std::map<std::string, std::pair<Web, Rat>> terms_;
};

// -- factories ---------------------------------------------------------------
// Vertical strands joining bottom i to top i; the unit of the strip algebra.
Web identity_web(const std::vector<int>& sig);
// The two-vertex web joining strands i, i+1 (1-based) of the (1^n) strip.
Web h_web(int i, int n);
// Image of the Temperley-Lieb-Martin generator: identity minus h_web.
WebSum tau_image(int i, int n);

// -- algebra -----------------------------------------------------------------
// Places `upper` on top of `lower`, welding lower's top line to upper's
// bottom line.  Closed chains produced by the welds count as free loops and
// multiply the coefficient by 3 each; the web part is returned with the
// accumulated factor.  Throws BoundaryMismatch if the interfaces disagree.
std::pair<Web, Rat> concatenate(const Web& upper, const Web& lower);
WebSum concatenate(const WebSum& upper, const WebSum& lower);

// Kuperberg reduction: loops x3, digons x2, internal square faces rewritten
// as the sum of the two parallel resolutions, to a normal form.
WebSum reduce(const Web& w);
WebSum reduce(const WebSum& ws);
// Same rewriting with the reducible face chosen pseudo-randomly; used by the
// confluence test.  The result must not depend on the seed.
WebSum reduce_randomized(const Web& w, std::uint64_t seed);

// Product in the strip algebra: concatenate then reduce.
WebSum mul(const WebSum& upper, const WebSum& lower);

// -- module webs and tensor evaluation ----------------------------------------
// Evaluates the module web `lam` (legs on one line, signature `sig`) as an
// sl3-invariant multilinear form on the basis vector e_T: a state sum over
// edge colorings in {1,2,3} with Levi-Civita weights at trivalent vertices
// (colors read in rotation order) and boundary weights given by T's row
// numbers.  Throws ContentMismatch if `lam` or `T` does not fit `sig`.
Int tensor_value(const Web& lam, const Filling& T, const Signature& sig);

struct ReducedBasis {
  Signature sig;
  std::vector<Web> webs;  // ordered so that matrix_M is unit lower triangular
};

// Enumerates the reduced module webs with boundary `sig` by growth moves
// (caps, cups, trivalent joins) plus reduction, deduplicating by canonical
// key, until kostka(pi, sig) distinct webs are found.  Throws
// HarvestIncomplete if the move budget is exhausted first.
ReducedBasis harvest_reduced(const Signature& sig);

struct ChangeOfBasis {
  std::vector<Filling> tableaux;           // row order: RSYT, row-reading lex
  ReducedBasis basis;                      // column order
  std::vector<std::vector<Int>> M;         // M[T][lambda] = lambda(e_T)
  std::vector<std::vector<Int>> Minv;      // exact inverse (again integral)
};

ChangeOfBasis matrix_M(const Signature& sig);
// Rows of M^{-1}: the coefficients expressing each pure partition function
// over the tableau blocks.
std::vector<std::vector<Int>> pure_partition_coeffs(const Signature& sig);

// Switches the OpenMP path of matrix_M on or off (serial reference kept for
// testing); mirrors the linalg switch.
void set_parallel_webs(bool enabled);
bool parallel_webs();

// Verifies the local tensor identities behind tensor_value (digon and square
// relations as exact tensor equations).  Cheap; called once lazily, exposed
// for the test suite.
void assert_spider_identities();

}  // namespace w3b
