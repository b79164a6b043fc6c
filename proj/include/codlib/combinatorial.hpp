#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "codlib/canonical.hpp"
#include "codlib/design.hpp"

namespace codlib {

/// Entry of a design without linear combination: zero, or a signed and
/// possibly conjugated variable. Exact integer data only.
struct SymbolicEntry {
  int var = 0;  // 0 marks a zero entry, otherwise the 1-based variable index
  int sign = 0;
  bool conj = false;

  static SymbolicEntry zero() { return {}; }
  static SymbolicEntry of(int var, int sign, bool conj) {
    require(var >= 1 && (sign == 1 || sign == -1), Errc::invalid_argument,
            "malformed symbolic entry");
    return {var, sign, conj};
  }

  bool is_zero() const { return var == 0; }
  SymbolicEntry negated() const { return is_zero() ? *this : SymbolicEntry{var, -sign, conj}; }
  SymbolicEntry conjugated() const { return is_zero() ? *this : SymbolicEntry{var, sign, !conj}; }

  friend bool operator==(const SymbolicEntry&, const SymbolicEntry&) = default;
};

namespace detail {

struct Grid {
  Index n = 0;
  std::vector<SymbolicEntry> cells;  // row-major n x n

  static Grid zero(Index n) {
    return Grid{n, std::vector<SymbolicEntry>(static_cast<std::size_t>(n * n))};
  }

  SymbolicEntry& at(Index r, Index c) { return cells[static_cast<std::size_t>(r * n + c)]; }
  const SymbolicEntry& at(Index r, Index c) const {
    return cells[static_cast<std::size_t>(r * n + c)];
  }

  friend bool operator==(const Grid&, const Grid&) = default;
};

// Each variable 1..k exactly once per row and once per column.
inline void check_grid_support(const Grid& g, int k, Errc code) {
  require(k >= 1 && g.n >= 1, code, "empty grid");
  for (Index r = 0; r < g.n; ++r) {
    std::vector<int> count(static_cast<std::size_t>(k), 0);
    for (Index c = 0; c < g.n; ++c) {
      const SymbolicEntry& e = g.at(r, c);
      if (e.is_zero()) continue;
      require(e.var <= k && (e.sign == 1 || e.sign == -1), code, "entry outside the alphabet");
      ++count[static_cast<std::size_t>(e.var - 1)];
    }
    for (int cnt : count) require(cnt == 1, code, "variable not exactly once in a row");
  }
  for (Index c = 0; c < g.n; ++c) {
    std::vector<int> count(static_cast<std::size_t>(k), 0);
    for (Index r = 0; r < g.n; ++r)
      if (!g.at(r, c).is_zero()) ++count[static_cast<std::size_t>(g.at(r, c).var - 1)];
    for (int cnt : count) require(cnt == 1, code, "variable not exactly once in a column");
  }
}

}  // namespace detail

/// Square COD whose entries are drawn from {0, +-z_i, +-z_i^*}, stored as an
/// exact n x n symbol grid. Valid instances carry every variable exactly
/// once per row and once per column.
class CombinatorialDesign {
 public:
  static CombinatorialDesign from_grid(Index n, int k, std::vector<SymbolicEntry> cells) {
    require(n >= 1 && k >= 1, Errc::invalid_argument, "grid needs n, k >= 1");
    require(cells.size() == static_cast<std::size_t>(n * n), Errc::invalid_argument,
            "cell count must be n*n");
    CombinatorialDesign d;
    d.grid_ = detail::Grid{n, std::move(cells)};
    d.k_ = k;
    detail::check_grid_support(d.grid_, k, Errc::malformed_design);
    return d;
  }

  Index n() const { return grid_.n; }
  int k() const { return k_; }
  const SymbolicEntry& at(Index r, Index c) const { return grid_.at(r, c); }
  const detail::Grid& grid() const { return grid_; }

  friend bool operator==(const CombinatorialDesign&, const CombinatorialDesign&) = default;

 private:
  friend CombinatorialDesign design_from_internal(detail::Grid g, int k);
  detail::Grid grid_;
  int k_ = 0;
};

inline CombinatorialDesign design_from_internal(detail::Grid g, int k) {
  CombinatorialDesign d;
  d.grid_ = std::move(g);
  d.k_ = k;
  return d;
}

/// Row/column permutations plus sign vectors certifying a signed-permutation
/// equivalence. Applying a witness w to a grid g yields
/// result[i][j] = row_signs[i] * col_signs[j] * g[row_perm[i]][col_perm[j]].
struct EquivalenceWitness {
  std::vector<Index> row_perm, col_perm;
  std::vector<int> row_signs, col_signs;

  static EquivalenceWitness identity(Index n) {
    EquivalenceWitness w;
    for (Index i = 0; i < n; ++i) {
      w.row_perm.push_back(i);
      w.col_perm.push_back(i);
      w.row_signs.push_back(1);
      w.col_signs.push_back(1);
    }
    return w;
  }

  void validate(Index n) const {
    auto check_perm = [&](const std::vector<Index>& p) {
      require(p.size() == static_cast<std::size_t>(n), Errc::invalid_argument,
              "witness size mismatch");
      std::vector<bool> seen(static_cast<std::size_t>(n), false);
      for (Index i : p) {
        require(i >= 0 && i < n && !seen[static_cast<std::size_t>(i)], Errc::invalid_argument,
                "witness permutation is not a permutation");
        seen[static_cast<std::size_t>(i)] = true;
      }
    };
    check_perm(row_perm);
    check_perm(col_perm);
    require(row_signs.size() == static_cast<std::size_t>(n) &&
                col_signs.size() == static_cast<std::size_t>(n),
            Errc::invalid_argument, "witness size mismatch");
    for (int s : row_signs)
      require(s == 1 || s == -1, Errc::invalid_argument, "witness signs must be +-1");
    for (int s : col_signs)
      require(s == 1 || s == -1, Errc::invalid_argument, "witness signs must be +-1");
  }
};

inline CombinatorialDesign apply_witness(const CombinatorialDesign& d,
                                         const EquivalenceWitness& w) {
  const Index n = d.n();
  w.validate(n);
  std::vector<SymbolicEntry> cells(static_cast<std::size_t>(n * n));
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) {
      SymbolicEntry e = d.at(w.row_perm[static_cast<std::size_t>(r)],
                             w.col_perm[static_cast<std::size_t>(c)]);
      if (w.row_signs[static_cast<std::size_t>(r)] * w.col_signs[static_cast<std::size_t>(c)] < 0)
        e = e.negated();
      cells[static_cast<std::size_t>(r * n + c)] = e;
    }
  return CombinatorialDesign::from_grid(n, d.k(), std::move(cells));
}

/// Expansion into per-variable 0/+-1 coefficient matrices.
inline LinearDesign to_linear(const CombinatorialDesign& d) {
  const Index n = d.n();
  std::vector<ComplexMatrix> a(static_cast<std::size_t>(d.k()), ComplexMatrix::Zero(n, n));
  std::vector<ComplexMatrix> b(static_cast<std::size_t>(d.k()), ComplexMatrix::Zero(n, n));
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) {
      const SymbolicEntry& e = d.at(r, c);
      if (e.is_zero()) continue;
      (e.conj ? b : a)[static_cast<std::size_t>(e.var - 1)](r, c) = static_cast<double>(e.sign);
    }
  return LinearDesign::cod(std::move(a), std::move(b));
}

/// Exact inverse of to_linear: every coefficient entry must be exactly 0 or
/// +-1 with at most one variable occupying each cell.
inline CombinatorialDesign from_linear(const LinearDesign& d) {
  require(d.kind() == DesignKind::cod, Errc::invalid_argument, "from_linear needs a cod");
  require(d.is_square(), Errc::malformed_design, "combinatorial designs are square");
  const Index n = d.n();
  std::vector<SymbolicEntry> cells(static_cast<std::size_t>(n * n));
  for (int i = 1; i <= d.vars(); ++i) {
    for (bool conj : {false, true}) {
      const ComplexMatrix& m = conj ? d.b(i) : d.a(i);
      for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c) {
          const Complex val = m(r, c);
          if (val == Complex(0.0, 0.0)) continue;
          require(val.imag() == 0.0 && (val.real() == 1.0 || val.real() == -1.0),
                  Errc::malformed_design, "coefficient entries must be exactly 0 or +-1");
          SymbolicEntry& cell = cells[static_cast<std::size_t>(r * n + c)];
          require(cell.is_zero(), Errc::malformed_design, "two variables share one cell");
          cell = SymbolicEntry::of(i, val.real() > 0 ? 1 : -1, conj);
        }
    }
  }
  return CombinatorialDesign::from_grid(n, d.vars(), std::move(cells));
}

/// (rows holding z_i unconjugated, rows holding z_i^*). Since both supports
/// are partial permutation matrices these counts are the ranks of A_i, B_i.
inline std::pair<Index, Index> variable_ranks(const CombinatorialDesign& d, int i) {
  require(i >= 1 && i <= d.k(), Errc::invalid_argument, "variable index out of range");
  Index plain = 0, conj = 0;
  for (Index r = 0; r < d.n(); ++r)
    for (Index c = 0; c < d.n(); ++c) {
      const SymbolicEntry& e = d.at(r, c);
      if (e.var == i) (e.conj ? conj : plain) += 1;
    }
  return {plain, conj};
}

namespace detail {

inline Grid grid_adjoint(const Grid& g) {
  Grid out = Grid::zero(g.n);
  for (Index r = 0; r < g.n; ++r)
    for (Index c = 0; c < g.n; ++c) out.at(c, r) = g.at(r, c).conjugated();
  return out;
}

inline Grid canonical_cod_cells(int k, bool minus) {
  Grid g{1, {SymbolicEntry::of(1, 1, false)}};
  for (int level = 2; level <= k; ++level) {
    const Index h = g.n;
    Grid next = Grid::zero(2 * h);
    const Grid adj = grid_adjoint(g);
    for (Index r = 0; r < h; ++r)
      for (Index c = 0; c < h; ++c) {
        next.at(r, c) = g.at(r, c);
        next.at(h + r, h + c) = adj.at(r, c);
      }
    for (Index r = 0; r < h; ++r) {
      next.at(r, h + r) = SymbolicEntry::of(level, 1, false);
      next.at(h + r, r) = SymbolicEntry::of(level, -1, true);
    }
    g = std::move(next);
  }
  if (minus)
    for (SymbolicEntry& e : g.cells)
      if (e.var == k) e = e.conjugated();
  return g;
}

inline Grid canonical_block_cells(int k, int plus_blocks, int minus_blocks) {
  const Index bd = pow2(k - 1);
  const Index n = static_cast<Index>(plus_blocks + minus_blocks) * bd;
  Grid g = Grid::zero(n);
  const Grid plus = canonical_cod_cells(k, false);
  const Grid minus = minus_blocks > 0 ? canonical_cod_cells(k, true) : plus;
  for (int j = 0; j < plus_blocks + minus_blocks; ++j) {
    const Grid& blk = j < plus_blocks ? plus : minus;
    const Index off = static_cast<Index>(j) * bd;
    for (Index r = 0; r < bd; ++r)
      for (Index c = 0; c < bd; ++c) g.at(off + r, off + c) = blk.at(r, c);
  }
  return g;
}

}  // namespace detail

/// Exact symbol grid of a block-diagonal canonical COD.
inline CombinatorialDesign canonical_grid(const CanonicalSpec& spec) {
  spec.validate();
  require(spec.kind == DesignKind::cod, Errc::invalid_argument,
          "combinatorial grids exist for cod canonical forms");
  return design_from_internal(
      detail::canonical_block_cells(spec.vars, spec.plus_blocks, spec.minus_blocks), spec.vars);
}

namespace detail {

enum class OpKind { row_swap, col_swap, row_neg, col_neg };

struct GridOp {
  OpKind kind;
  Index a = 0, b = 0;
};

// Working state of the canonicalization: a mutable grid, the elementary-move
// log (so an enclosing recursion level can replay moves under its mirror
// rule), and the accumulated signed permutations relating the current grid
// to the original one.
class Canonicalizer {
 public:
  explicit Canonicalizer(Grid grid) : g_(std::move(grid)) {
    for (Index i = 0; i < g_.n; ++i) {
      rp_.push_back(i);
      cp_.push_back(i);
      rs_.push_back(1);
      cs_.push_back(1);
    }
  }

  const Grid& grid() const { return g_; }
  const std::vector<GridOp>& ops() const { return ops_; }

  // current[i][j] = row_signs[i] * col_signs[j] * original[row_map[i]][col_map[j]]
  const std::vector<Index>& row_map() const { return rp_; }
  const std::vector<Index>& col_map() const { return cp_; }
  const std::vector<int>& row_signs() const { return rs_; }
  const std::vector<int>& col_signs() const { return cs_; }

  // Reduces the grid to the block-diagonal canonical form in variables
  // 1..k; returns the (plus, minus) block counts.
  std::pair<int, int> run(int k) {
    if (k == 1) return run_base();
    const Index q = g_.n;
    require(q % 2 == 0, Errc::malformed_design, "odd dimension at an inner level");
    const Index h = q / 2;

    // Split rows by the conjugation of their z_k entry.
    std::vector<Index> plain_rows, conj_rows;
    for (Index r = 0; r < q; ++r) {
      const Index c = find_var_in_row(r, k);
      (g_.at(r, c).conj ? conj_rows : plain_rows).push_back(r);
    }
    require(static_cast<Index>(plain_rows.size()) == h &&
                static_cast<Index>(conj_rows.size()) == h,
            Errc::malformed_design, "last-variable ranks are not n/2 and n/2");
    std::vector<Index> row_src = plain_rows;
    row_src.insert(row_src.end(), conj_rows.begin(), conj_rows.end());
    permute_rows(0, row_src);

    // Columns: the conjugated entries (bottom rows) fill the left half, the
    // plain ones (top rows) the right half, both ordered so the supports
    // become identity blocks.
    std::vector<Index> col_src(static_cast<std::size_t>(q));
    for (Index r = 0; r < h; ++r) col_src[static_cast<std::size_t>(h + r)] = find_var_in_row(r, k);
    for (Index r = h; r < q; ++r) col_src[static_cast<std::size_t>(r - h)] = find_var_in_row(r, k);
    permute_cols(0, col_src);

    // Clear signs: top rows first, then left columns.
    for (Index r = 0; r < h; ++r)
      if (g_.at(r, h + r).sign < 0) row_neg(r);
    for (Index c = 0; c < h; ++c)
      if (g_.at(h + c, c).sign < 0) col_neg(c);

    check_split_structure(k, h);

    // Recurse on the top-left window; mirrored replay keeps the identity
    // blocks intact and transports the bottom-right block along.
    Grid window = Grid::zero(h);
    for (Index r = 0; r < h; ++r)
      for (Index c = 0; c < h; ++c) window.at(r, c) = g_.at(r, c);
    Canonicalizer child(std::move(window));
    const auto [plus_count, minus_count] = child.run(k - 1);
    replay_mirrored(child.ops(), h);

    // Interleave the two halves into per-block form.
    const Index s = pow2(k - 2);
    const Index blocks = h / s;
    std::vector<Index> shuffle(static_cast<std::size_t>(q));
    for (Index j = 0; j < blocks; ++j)
      for (Index u = 0; u < s; ++u) {
        shuffle[static_cast<std::size_t>(j * 2 * s + u)] = j * s + u;
        shuffle[static_cast<std::size_t>(j * 2 * s + s + u)] = h + j * s + u;
      }
    permute_rows(0, shuffle);
    permute_cols(0, shuffle);

    // Per block: negate the lower rows to reach the canonical sign layout;
    // blocks lifted from minus sub-blocks additionally get the fixed
    // conjugation that moves the conjugated variable to the last slot.
    for (Index j = 0; j < blocks; ++j) {
      const Index base = j * 2 * s;
      for (Index u = 0; u < s; ++u) row_neg(base + s + u);
      if (j >= plus_count) fix_minus_block(base, s);
    }

    const std::pair<int, int> counts{plus_count, minus_count};
    require(g_ == canonical_block_cells(k, counts.first, counts.second), Errc::malformed_design,
            "grid is not equivalent to a canonical block form");
    return counts;
  }

 private:
  // k = 1: one signed symbol per row and column. Move the support onto the
  // diagonal, clear signs by row negations, then sort unconjugated entries
  // first by a simultaneous row/column permutation.
  std::pair<int, int> run_base() {
    const Index q = g_.n;
    std::vector<Index> col_src(static_cast<std::size_t>(q));
    for (Index r = 0; r < q; ++r) col_src[static_cast<std::size_t>(r)] = find_var_in_row(r, 1);
    permute_cols(0, col_src);
    for (Index r = 0; r < q; ++r)
      if (g_.at(r, r).sign < 0) row_neg(r);
    std::vector<Index> order;
    for (Index r = 0; r < q; ++r)
      if (!g_.at(r, r).conj) order.push_back(r);
    const int plus_count = static_cast<int>(order.size());
    for (Index r = 0; r < q; ++r)
      if (g_.at(r, r).conj) order.push_back(r);
    permute_rows(0, order);
    permute_cols(0, order);
    return {plus_count, static_cast<int>(q) - plus_count};
  }

  Index find_var_in_row(Index r, int var) const {
    Index where = -1;
    for (Index c = 0; c < g_.n; ++c)
      if (g_.at(r, c).var == var) {
        require(where < 0, Errc::malformed_design, "variable repeated in a row");
        where = c;
      }
    require(where >= 0, Errc::malformed_design, "variable missing from a row");
    return where;
  }

  void check_split_structure(int k, Index h) const {
    for (Index r = 0; r < h; ++r)
      for (Index c = 0; c < h; ++c) {
        const SymbolicEntry tr = g_.at(r, h + c);
        require(r == c ? tr == SymbolicEntry::of(k, 1, false) : tr.is_zero(),
                Errc::malformed_design, "top-right block is not the identity in z_k");
        const SymbolicEntry bl = g_.at(h + r, c);
        require(r == c ? bl == SymbolicEntry::of(k, 1, true) : bl.is_zero(),
                Errc::malformed_design, "bottom-left block is not the identity in z_k^*");
        require(g_.at(h + r, h + c) == g_.at(c, r).conjugated().negated(),
                Errc::malformed_design, "bottom-right block is not minus the adjoint");
      }
    Grid window = Grid::zero(h);
    for (Index r = 0; r < h; ++r)
      for (Index c = 0; c < h; ++c) window.at(r, c) = g_.at(r, c);
    check_grid_support(window, k - 1, Errc::malformed_design);
  }

  // Turns a block [[C'_minus, z_k I],[-z_k^* I, C'_minus^H]] (whose inner
  // design conjugates its own last variable) into the canonical form that
  // conjugates z_k instead: conjugation by the signed permutation
  // [[0, P],[-P, 0]], where P swaps the halves of the inner block.
  void fix_minus_block(Index base, Index s) {
    std::vector<Index> src(static_cast<std::size_t>(2 * s));
    std::vector<int> sgn(static_cast<std::size_t>(2 * s), 1);
    auto p = [s](Index u) { return s == 1 ? u : (u + s / 2) % s; };
    for (Index u = 0; u < s; ++u) {
      src[static_cast<std::size_t>(u)] = s + p(u);
      src[static_cast<std::size_t>(s + u)] = p(u);
      sgn[static_cast<std::size_t>(s + u)] = -1;
    }
    permute_rows(base, src);
    for (Index x = 0; x < 2 * s; ++x)
      if (sgn[static_cast<std::size_t>(x)] < 0) row_neg(base + x);
    permute_cols(base, src);
    for (Index x = 0; x < 2 * s; ++x)
      if (sgn[static_cast<std::size_t>(x)] < 0) col_neg(base + x);
  }

  void row_swap(Index a, Index b) {
    if (a == b) return;
    for (Index c = 0; c < g_.n; ++c) std::swap(g_.at(a, c), g_.at(b, c));
    std::swap(rp_[static_cast<std::size_t>(a)], rp_[static_cast<std::size_t>(b)]);
    std::swap(rs_[static_cast<std::size_t>(a)], rs_[static_cast<std::size_t>(b)]);
    ops_.push_back({OpKind::row_swap, a, b});
  }

  void col_swap(Index a, Index b) {
    if (a == b) return;
    for (Index r = 0; r < g_.n; ++r) std::swap(g_.at(r, a), g_.at(r, b));
    std::swap(cp_[static_cast<std::size_t>(a)], cp_[static_cast<std::size_t>(b)]);
    std::swap(cs_[static_cast<std::size_t>(a)], cs_[static_cast<std::size_t>(b)]);
    ops_.push_back({OpKind::col_swap, a, b});
  }

  void row_neg(Index a) {
    for (Index c = 0; c < g_.n; ++c) g_.at(a, c) = g_.at(a, c).negated();
    rs_[static_cast<std::size_t>(a)] = -rs_[static_cast<std::size_t>(a)];
    ops_.push_back({OpKind::row_neg, a, a});
  }

  void col_neg(Index a) {
    for (Index r = 0; r < g_.n; ++r) g_.at(r, a) = g_.at(r, a).negated();
    cs_[static_cast<std::size_t>(a)] = -cs_[static_cast<std::size_t>(a)];
    ops_.push_back({OpKind::col_neg, a, a});
  }

  // Rearranges rows offset..offset+len-1 so position offset+x ends up
  // holding what position offset+source_of[x] held at call time.
  void permute_rows(Index offset, const std::vector<Index>& source_of) {
    const Index len = static_cast<Index>(source_of.size());
    std::vector<Index> cur(static_cast<std::size_t>(len)), pos(static_cast<std::size_t>(len));
    for (Index i = 0; i < len; ++i)
      cur[static_cast<std::size_t>(i)] = pos[static_cast<std::size_t>(i)] = i;
    for (Index x = 0; x < len; ++x) {
      const Index y = pos[static_cast<std::size_t>(source_of[static_cast<std::size_t>(x)])];
      if (y == x) continue;
      row_swap(offset + x, offset + y);
      std::swap(cur[static_cast<std::size_t>(x)], cur[static_cast<std::size_t>(y)]);
      pos[static_cast<std::size_t>(cur[static_cast<std::size_t>(x)])] = x;
      pos[static_cast<std::size_t>(cur[static_cast<std::size_t>(y)])] = y;
    }
  }

  void permute_cols(Index offset, const std::vector<Index>& source_of) {
    const Index len = static_cast<Index>(source_of.size());
    std::vector<Index> cur(static_cast<std::size_t>(len)), pos(static_cast<std::size_t>(len));
    for (Index i = 0; i < len; ++i)
      cur[static_cast<std::size_t>(i)] = pos[static_cast<std::size_t>(i)] = i;
    for (Index x = 0; x < len; ++x) {
      const Index y = pos[static_cast<std::size_t>(source_of[static_cast<std::size_t>(x)])];
      if (y == x) continue;
      col_swap(offset + x, offset + y);
      std::swap(cur[static_cast<std::size_t>(x)], cur[static_cast<std::size_t>(y)]);
      pos[static_cast<std::size_t>(cur[static_cast<std::size_t>(x)])] = x;
      pos[static_cast<std::size_t>(cur[static_cast<std::size_t>(y)])] = y;
    }
  }

  // Replays moves of a sub-canonicalization of the top-left h x h window,
  // mirroring each onto the opposite half so the identity blocks at
  // (top, right) and (bottom, left) stay intact.
  void replay_mirrored(const std::vector<GridOp>& child_ops, Index h) {
    for (const GridOp& op : child_ops) {
      switch (op.kind) {
        case OpKind::row_swap:
          row_swap(op.a, op.b);
          col_swap(h + op.a, h + op.b);
          break;
        case OpKind::row_neg:
          row_neg(op.a);
          col_neg(h + op.a);
          break;
        case OpKind::col_swap:
          col_swap(op.a, op.b);
          row_swap(h + op.a, h + op.b);
          break;
        case OpKind::col_neg:
          col_neg(op.a);
          row_neg(h + op.a);
          break;
      }
    }
  }

  Grid g_;
  std::vector<GridOp> ops_;
  std::vector<Index> rp_, cp_;
  std::vector<int> rs_, cs_;
};

}  // namespace detail

struct CanonicalizeResult {
  CanonicalSpec spec;
  EquivalenceWitness witness;
};

/// Reduces a valid combinatorial design to its canonical block form by
/// explicit row/column permutations and negations. The returned witness
/// replays the canonical grid back to the input exactly:
/// apply_witness(canonical_grid(spec), witness) == d.
inline CanonicalizeResult canonicalize(const CombinatorialDesign& d) {
  require(cod_admissible(d.n(), d.k()), Errc::not_admissible,
          "no square design of this size exists: the block dimension does not divide n");
  // Exactness gate: the grid must satisfy the design identities with zero
  // residual (the 0/+-1 arithmetic involved is exact in doubles).
  const VerifyReport report = verify_design(to_linear(d), Tolerance{0.0, 0.0});
  require(report.max_residual == 0.0, Errc::malformed_design,
          "grid does not satisfy the design identities exactly");

  detail::Canonicalizer engine(d.grid());
  const auto [n1, n2] = engine.run(d.k());
  CanonicalSpec spec{DesignKind::cod, d.k(), n1, n2};

  // engine state: canonical[i][j] = rs[i] cs[j] original[rp[i]][cp[j]].
  // The witness inverts that relation.
  const Index n = d.n();
  EquivalenceWitness w = EquivalenceWitness::identity(n);
  for (Index i = 0; i < n; ++i) {
    w.row_perm[static_cast<std::size_t>(engine.row_map()[static_cast<std::size_t>(i)])] = i;
    w.col_perm[static_cast<std::size_t>(engine.col_map()[static_cast<std::size_t>(i)])] = i;
  }
  for (Index i = 0; i < n; ++i) {
    w.row_signs[static_cast<std::size_t>(i)] =
        engine.row_signs()[static_cast<std::size_t>(w.row_perm[static_cast<std::size_t>(i)])];
    w.col_signs[static_cast<std::size_t>(i)] =
        engine.col_signs()[static_cast<std::size_t>(w.col_perm[static_cast<std::size_t>(i)])];
  }

  const CombinatorialDesign canon = canonical_grid(spec);
  require(apply_witness(canon, w) == d, Errc::witness_mismatch,
          "witness does not replay the canonical grid to the input");
  return CanonicalizeResult{spec, std::move(w)};
}

/// Permutation-with-scalars test: accepts matrices whose every row and
/// column carry exactly one entry of unit modulus with everything else below
/// tolerance. Scalars are reported per destination row; real_signs marks
/// whether they are all +-1 (as opposed to general unit complex numbers).
struct SignedPermutation {
  std::vector<Index> perm;       // row -> column of its unit entry
  std::vector<Complex> scalars;  // the entry at (row, perm[row])
  bool real_signs = true;
};

inline std::optional<SignedPermutation> is_signed_permutation(const ComplexMatrix& m,
                                                              const Tolerance& tol = {}) {
  tol.validate();
  if (m.rows() != m.cols() || m.rows() == 0) return std::nullopt;
  const Index n = m.rows();
  const double floor = tol.abs + tol.rel;
  SignedPermutation out;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Index r = 0; r < n; ++r) {
    Index hit = -1;
    for (Index c = 0; c < n; ++c) {
      const double mag = std::abs(m(r, c));
      if (mag <= floor) continue;
      if (hit >= 0 || !tol.admits(std::abs(mag - 1.0))) return std::nullopt;
      hit = c;
    }
    if (hit < 0 || used[static_cast<std::size_t>(hit)]) return std::nullopt;
    used[static_cast<std::size_t>(hit)] = true;
    const Complex s = m(r, hit);
    out.perm.push_back(hit);
    out.scalars.push_back(s);
    if (!tol.admits(std::abs(s.imag())) || !tol.admits(std::abs(std::abs(s.real()) - 1.0)))
      out.real_signs = false;
  }
  return out;
}

}  // namespace codlib
