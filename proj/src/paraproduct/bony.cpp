#include "alp/paraproduct/bony.hpp"

#include <map>

#include "alp/spectral/fft.hpp"
#include "alp/spectral/operators.hpp"
#include "alp/spectral/projectors.hpp"

namespace alp {
namespace {

// A directional "atom" is either one dyadic band or the zero-frequency part.
// Every operator used by the splittings (Delta_j, S_j, tilde Delta_j, zero
// part) is a sum of atoms, so evaluating the pieces from cached atom fields
// reorganizes the same pointwise products and the identities hold to round-off.
using AtomSet = std::vector<int>;

struct Axis {
  Direction dir = Direction::horizontal;
  bool split = false;  // false: the identity, a single atom
  BandRange range;

  int atom_count() const { return split ? range.count() + 1 : 1; }
  int zero_atom() const { return range.count(); }

  AtomSet band(int j) const {
    if (!range.contains(j)) return {};
    return {j - range.first};
  }
  // S_j: every band below j plus the zero part.
  AtomSet lowpass(int j) const {
    AtomSet s{zero_atom()};
    for (int i = range.first; i < j && i <= range.last; ++i) s.push_back(i - range.first);
    return s;
  }
  AtomSet around(int j) const {
    AtomSet s;
    for (int i = j - 1; i <= j + 1; ++i)
      if (range.contains(i)) s.push_back(i - range.first);
    return s;
  }
};

Axis make_axis(const Grid& g, Direction d) { return Axis{d, true, band_range(g, d)}; }
Axis identity_axis() { return Axis{}; }

// One product term of a splitting: (left atoms of a) x (right atoms of b).
struct Term {
  AtomSet left;
  AtomSet right;
};

std::vector<Term> piece_terms(const Axis& ax, BonyPiece piece) {
  if (!ax.split) return {Term{{0}, {0}}};
  std::vector<Term> terms;
  const BandRange r = ax.range;
  switch (piece) {
    case BonyPiece::T:
      for (int j = r.first; j <= r.last; ++j) terms.push_back({ax.lowpass(j - 1), ax.band(j)});
      break;
    case BonyPiece::Tbar:
      for (int j = r.first; j <= r.last; ++j) terms.push_back({ax.band(j), ax.lowpass(j - 1)});
      break;
    case BonyPiece::R:
      for (int j = r.first; j <= r.last; ++j) terms.push_back({ax.band(j), ax.around(j)});
      terms.push_back({{ax.zero_atom()}, {ax.zero_atom()}});
      break;
  }
  return terms;
}

std::vector<Term> alt_remainder_terms(const Axis& ax) {
  std::vector<Term> terms;
  for (int j = ax.range.first; j <= ax.range.last; ++j) terms.push_back({ax.band(j), ax.lowpass(j + 2)});
  terms.push_back({{ax.zero_atom()}, {ax.zero_atom()}});
  return terms;
}

// Physical-space atom fields of one factor for a pair of axes, plus memoized
// sums over atom sets.
class AtomField {
 public:
  AtomField(const SpectralField3& f, const Axis& h, const Axis& v) : h_(h), v_(v) {
    const std::size_t n = f.mode_count();
    atoms_.resize(static_cast<std::size_t>(h.atom_count() * v.atom_count()));
    const ModeTable& t = f.modes();
    for (int ih = 0; ih < h.atom_count(); ++ih) {
      for (int iv = 0; iv < v.atom_count(); ++iv) {
        SpectralField3 part = f;
        auto c = part.component(0);
        for (std::size_t i = 0; i < n; ++i) c[i] *= weight(t, h, ih, i) * weight(t, v, iv, i);
        if (part.is_zero()) continue;
        atoms_[index(ih, iv)] = to_physical(part);
      }
    }
    size_ = n;
  }

  const PhysicalField* sum(const AtomSet& hs, const AtomSet& vs) {
    auto key = std::make_pair(hs, vs);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second.empty() ? nullptr : &it->second;
    PhysicalField out;
    for (int ih : hs) {
      for (int iv : vs) {
        const PhysicalField& a = atoms_[index(ih, iv)];
        if (a.empty()) continue;
        if (out.empty()) out.assign(size_, 0.0);
        for (std::size_t i = 0; i < size_; ++i) out[i] += a[i];
      }
    }
    auto& slot = memo_[key] = std::move(out);
    return slot.empty() ? nullptr : &slot;
  }

 private:
  static double weight(const ModeTable& t, const Axis& ax, int atom, std::size_t i) {
    if (!ax.split) return 1.0;
    if (atom == ax.zero_atom()) return t.radii(ax.dir)[i] == 0.0 ? 1.0 : 0.0;
    return block_weight(t, ax.dir, ax.range.first + atom, i);
  }
  std::size_t index(int ih, int iv) const { return static_cast<std::size_t>(ih * v_.atom_count() + iv); }

  Axis h_, v_;
  std::size_t size_ = 0;
  std::vector<PhysicalField> atoms_;
  std::map<std::pair<AtomSet, AtomSet>, PhysicalField> memo_;
};

void accumulate_product(PhysicalField& acc, const PhysicalField* x, const PhysicalField* y) {
  if (!x || !y) return;
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += (*x)[i] * (*y)[i];
}

SpectralField3 to_spectral(const Grid& g, const PhysicalField& values) { return dealias(from_physical(g, values)); }

// sum over (h term) x (v term) of (h.left v.left a) (h.right v.right b)
SpectralField3 evaluate(AtomField& fa, AtomField& fb, const Grid& g, const std::vector<Term>& h_terms,
                        const std::vector<Term>& v_terms) {
  PhysicalField acc(g.size(), 0.0);
  for (const Term& th : h_terms)
    for (const Term& tv : v_terms) accumulate_product(acc, fa.sum(th.left, tv.left), fb.sum(th.right, tv.right));
  return to_spectral(g, acc);
}

void require_inputs(const SpectralField3& a, const SpectralField3& b, const char* what) {
  require_same_grid(a, b, what);
  require_scalar(a, what);
  require_scalar(b, what);
}

}  // namespace

BonyPieces bony(const SpectralField3& a, const SpectralField3& b, Direction d) {
  require_inputs(a, b, "bony");
  const Grid& g = a.grid();
  const Axis ax = make_axis(g, d);
  const Axis id = identity_axis();
  AtomField fa(a, ax, id), fb(b, ax, id);
  const std::vector<Term> all = piece_terms(id, BonyPiece::T);
  BonyPieces out;
  out.T = evaluate(fa, fb, g, piece_terms(ax, BonyPiece::T), all);
  out.R = evaluate(fa, fb, g, piece_terms(ax, BonyPiece::R), all);
  out.Tbar = evaluate(fa, fb, g, piece_terms(ax, BonyPiece::Tbar), all);
  out.alt_T = out.T;
  out.alt_R = evaluate(fa, fb, g, alt_remainder_terms(ax), all);
  return out;
}

DoubleBonyPieces double_bony(const SpectralField3& a, const SpectralField3& b) {
  require_inputs(a, b, "double_bony");
  const Grid& g = a.grid();
  const Axis h = make_axis(g, Direction::horizontal);
  const Axis v = make_axis(g, Direction::vertical);
  AtomField fa(a, h, v), fb(b, h, v);
  DoubleBonyPieces out;
  for (int ph = 0; ph < 3; ++ph) {
    const auto h_terms = piece_terms(h, static_cast<BonyPiece>(ph));
    for (int pv = 0; pv < 3; ++pv)
      out[ph][pv] = evaluate(fa, fb, g, h_terms, piece_terms(v, static_cast<BonyPiece>(pv)));
  }
  return out;
}

std::vector<std::pair<int, SpectralField3>> paraproduct_terms(const SpectralField3& a, const SpectralField3& b,
                                                              Direction d) {
  require_inputs(a, b, "paraproduct_terms");
  const Grid& g = a.grid();
  const Axis ax = make_axis(g, d);
  const Axis id = identity_axis();
  AtomField fa(a, ax, id), fb(b, ax, id);
  const std::vector<Term> all = piece_terms(id, BonyPiece::T);
  std::vector<std::pair<int, SpectralField3>> out;
  for (int j = ax.range.first; j <= ax.range.last; ++j) {
    out.emplace_back(j, evaluate(fa, fb, g, {Term{ax.lowpass(j - 1), ax.band(j)}}, all));
  }
  return out;
}

}  // namespace alp
