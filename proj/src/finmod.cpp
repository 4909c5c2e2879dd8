#include "corat/finmod.hpp"

#include <algorithm>
#include <numeric>

#include "corat/matmul.hpp"

namespace corat {

namespace {

using std::int64_t;

bool can_pack(const BaseRing& r) { return r.is_zmod() && r.modulus < (1LL << 31); }

int64_t red64(int64_t v, int64_t m) {
  if (m == 0) return v;
  v %= m;
  if (v < 0) v += m;
  return v;
}

// order of a product/hom generator pair; 0 stands for infinite (Q)
int64_t ord_gcd(int64_t a, int64_t b) { return std::gcd(a, b); }

// coefficient of the standard hom generator: Z/a -> Z/b, 1 -> cogen
int64_t cogen(int64_t a, int64_t b) {
  if (b == 0) return 1;
  return b / ord_gcd(a, b);
}

bool divides(int64_t a, int64_t b) { // a | b with 0 = infinity
  if (a == 0) return b == 0;
  return b % a == 0;
}

// ---------------------------------------------------------------------------
// internal matrices between cyclic coordinate systems (no chain invariant)

struct Sys {
  BaseRing ring;
  std::vector<int64_t> ord;
  int n() const { return static_cast<int>(ord.size()); }
};

Sys sys_of(const FinMod& m) { return Sys{m.ring, m.factors}; }

Sys grid(const Sys& a, const Sys& b) {
  Sys g{a.ring, {}};
  g.ord.reserve(static_cast<size_t>(a.n()) * b.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < b.n(); ++j) g.ord.push_back(ord_gcd(a.ord[i], b.ord[j]));
  return g;
}

struct CM {
  enum class K { RowPick, ColPick, Dense } k = K::Dense;
  Sys dst, src;
  std::vector<int> pick; // RowPick: per dst row; ColPick: per src col; -1 = zero
  bool packed = true;
  std::vector<int64_t> di;
  std::vector<mpq_class> dq;
};

CM cm_rowpick(Sys dst, Sys src, std::vector<int> p) {
  CM c;
  c.k = CM::K::RowPick;
  c.dst = std::move(dst);
  c.src = std::move(src);
  c.pick = std::move(p);
  c.packed = can_pack(c.dst.ring);
  return c;
}
CM cm_colpick(Sys dst, Sys src, std::vector<int> p) {
  CM c;
  c.k = CM::K::ColPick;
  c.dst = std::move(dst);
  c.src = std::move(src);
  c.pick = std::move(p);
  c.packed = can_pack(c.dst.ring);
  return c;
}
CM cm_identity(const Sys& s) {
  std::vector<int> p(s.n());
  std::iota(p.begin(), p.end(), 0);
  return cm_rowpick(s, s, std::move(p));
}

void cm_reduce(CM& c) {
  if (c.k != CM::K::Dense || !c.dst.ring.is_zmod()) return;
  int nr = c.dst.n(), nc = c.src.n();
  for (int i = 0; i < nr; ++i) {
    int64_t d = c.dst.ord[i];
    if (c.packed) {
      for (int j = 0; j < nc; ++j) c.di[static_cast<size_t>(i) * nc + j] = red64(c.di[static_cast<size_t>(i) * nc + j], d);
    } else {
      for (int j = 0; j < nc; ++j) {
        mpq_class& e = c.dq[static_cast<size_t>(i) * nc + j];
        e = mpq_class(zmod_reduce(e.get_num(), d));
      }
    }
  }
}

CM cm_dense64(Sys dst, Sys src, std::vector<int64_t> a) {
  CM c;
  c.k = CM::K::Dense;
  c.dst = std::move(dst);
  c.src = std::move(src);
  c.packed = true;
  c.di = std::move(a);
  cm_reduce(c);
  return c;
}
CM cm_denseq(Sys dst, Sys src, std::vector<mpq_class> a) {
  CM c;
  c.k = CM::K::Dense;
  c.dst = std::move(dst);
  c.src = std::move(src);
  c.packed = false;
  c.dq = std::move(a);
  cm_reduce(c);
  return c;
}

CM cm_densify(const CM& c) {
  if (c.k == CM::K::Dense) return c;
  int nr = c.dst.n(), nc = c.src.n();
  if (can_pack(c.dst.ring)) {
    std::vector<int64_t> a(static_cast<size_t>(nr) * nc, 0);
    if (c.k == CM::K::RowPick) {
      for (int i = 0; i < nr; ++i)
        if (c.pick[i] >= 0) a[static_cast<size_t>(i) * nc + c.pick[i]] = 1;
    } else {
      for (int j = 0; j < nc; ++j)
        if (c.pick[j] >= 0) a[static_cast<size_t>(c.pick[j]) * nc + j] = 1;
    }
    return cm_dense64(c.dst, c.src, std::move(a));
  }
  std::vector<mpq_class> a(static_cast<size_t>(nr) * nc, mpq_class(0));
  if (c.k == CM::K::RowPick) {
    for (int i = 0; i < nr; ++i)
      if (c.pick[i] >= 0) a[static_cast<size_t>(i) * nc + c.pick[i]] = 1;
  } else {
    for (int j = 0; j < nc; ++j)
      if (c.pick[j] >= 0) a[static_cast<size_t>(c.pick[j]) * nc + j] = 1;
  }
  return cm_denseq(c.dst, c.src, std::move(a));
}

mpq_class cm_at(const CM& c, int i, int j) {
  switch (c.k) {
    case CM::K::RowPick: return mpq_class(c.pick[i] == j ? 1 : 0);
    case CM::K::ColPick: return mpq_class(c.pick[j] == i ? 1 : 0);
    default: break;
  }
  size_t ix = static_cast<size_t>(i) * c.src.n() + j;
  return c.packed ? mpq_class(static_cast<long>(c.di[ix])) : c.dq[ix];
}

CM cm_compose(const CM& x, const CM& y) {
  if (x.src.n() != y.dst.n()) throw Error(ErrKind::TypeMismatch, "cm_compose shape");
  // x : B -> C, y : A -> B
  if (x.k == CM::K::RowPick) {
    if (y.k == CM::K::RowPick) {
      std::vector<int> p(x.dst.n());
      for (int i = 0; i < x.dst.n(); ++i)
        p[i] = x.pick[i] < 0 ? -1 : y.pick[x.pick[i]];
      return cm_rowpick(x.dst, y.src, std::move(p));
    }
    if (y.k == CM::K::ColPick) {
      // row r of y has its 1s at columns {j : y.pick[j] == r}
      std::vector<int> at(y.dst.n(), -1);
      std::vector<char> multi(y.dst.n(), 0);
      for (int j = 0; j < y.src.n(); ++j) {
        int r = y.pick[j];
        if (r < 0) continue;
        if (at[r] >= 0) multi[r] = 1;
        at[r] = j;
      }
      bool ok = true;
      std::vector<int> p(x.dst.n(), -1);
      for (int i = 0; i < x.dst.n() && ok; ++i) {
        if (x.pick[i] < 0) continue;
        if (multi[x.pick[i]]) ok = false;
        else p[i] = at[x.pick[i]];
      }
      if (ok) return cm_rowpick(x.dst, y.src, std::move(p));
      return cm_compose(cm_densify(x), y);
    }
    // dense y: gather rows
    int nc = y.src.n();
    if (y.packed) {
      std::vector<int64_t> a(static_cast<size_t>(x.dst.n()) * nc, 0);
      for (int i = 0; i < x.dst.n(); ++i)
        if (x.pick[i] >= 0)
          std::copy_n(y.di.begin() + static_cast<size_t>(x.pick[i]) * nc, nc,
                      a.begin() + static_cast<size_t>(i) * nc);
      return cm_dense64(x.dst, y.src, std::move(a));
    }
    std::vector<mpq_class> a(static_cast<size_t>(x.dst.n()) * nc, mpq_class(0));
    for (int i = 0; i < x.dst.n(); ++i)
      if (x.pick[i] >= 0)
        std::copy_n(y.dq.begin() + static_cast<size_t>(x.pick[i]) * nc, nc,
                    a.begin() + static_cast<size_t>(i) * nc);
    return cm_denseq(x.dst, y.src, std::move(a));
  }
  if (x.k == CM::K::ColPick && y.k == CM::K::ColPick) {
    std::vector<int> p(y.src.n());
    for (int j = 0; j < y.src.n(); ++j)
      p[j] = y.pick[j] < 0 ? -1 : x.pick[y.pick[j]];
    return cm_colpick(x.dst, y.src, std::move(p));
  }
  if (x.k == CM::K::ColPick) return cm_compose(cm_densify(x), y);
  // x dense
  if (y.k == CM::K::ColPick) {
    int nc = y.src.n(), xs = x.src.n();
    if (x.packed) {
      std::vector<int64_t> a(static_cast<size_t>(x.dst.n()) * nc, 0);
      for (int j = 0; j < nc; ++j)
        if (y.pick[j] >= 0)
          for (int i = 0; i < x.dst.n(); ++i)
            a[static_cast<size_t>(i) * nc + j] = x.di[static_cast<size_t>(i) * xs + y.pick[j]];
      return cm_dense64(x.dst, y.src, std::move(a));
    }
    std::vector<mpq_class> a(static_cast<size_t>(x.dst.n()) * nc, mpq_class(0));
    for (int j = 0; j < nc; ++j)
      if (y.pick[j] >= 0)
        for (int i = 0; i < x.dst.n(); ++i)
          a[static_cast<size_t>(i) * nc + j] = x.dq[static_cast<size_t>(i) * xs + y.pick[j]];
    return cm_denseq(x.dst, y.src, std::move(a));
  }
  if (y.k == CM::K::RowPick) {
    int nc = y.src.n(), xs = x.src.n();
    if (x.packed) {
      std::vector<int64_t> a(static_cast<size_t>(x.dst.n()) * nc, 0);
      for (int kk = 0; kk < xs; ++kk) {
        int j = y.pick[kk];
        if (j < 0) continue;
        for (int i = 0; i < x.dst.n(); ++i)
          a[static_cast<size_t>(i) * nc + j] += x.di[static_cast<size_t>(i) * xs + kk];
      }
      return cm_dense64(x.dst, y.src, std::move(a));
    }
    std::vector<mpq_class> a(static_cast<size_t>(x.dst.n()) * nc, mpq_class(0));
    for (int kk = 0; kk < xs; ++kk) {
      int j = y.pick[kk];
      if (j < 0) continue;
      for (int i = 0; i < x.dst.n(); ++i)
        a[static_cast<size_t>(i) * nc + j] += x.dq[static_cast<size_t>(i) * xs + kk];
    }
    return cm_denseq(x.dst, y.src, std::move(a));
  }
  // dense * dense
  int n = x.dst.n(), k = x.src.n(), m2 = y.src.n();
  if (x.packed && y.packed) {
    std::vector<int64_t> a(static_cast<size_t>(n) * m2, 0);
    if (n > 0 && k > 0 && m2 > 0)
      matmul_mod(x.di.data(), y.di.data(), a.data(), n, k, m2, x.dst.ring.modulus);
    return cm_dense64(x.dst, y.src, std::move(a));
  }
  const CM& xd = x;
  const CM& yd = y;
  std::vector<mpq_class> a(static_cast<size_t>(n) * m2, mpq_class(0));
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < k; ++p) {
      mpq_class xe = cm_at(xd, i, p);
      if (xe == 0) continue;
      for (int j = 0; j < m2; ++j) {
        mpq_class ye = cm_at(yd, p, j);
        if (ye != 0) a[static_cast<size_t>(i) * m2 + j] += xe * ye;
      }
    }
  return cm_denseq(x.dst, y.src, std::move(a));
}

bool pick_bijective(const CM& c) {
  if (c.dst.n() != c.src.n()) return false;
  std::vector<char> seen(c.src.n(), 0);
  for (int v : c.pick) {
    if (v < 0 || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

CM pick_transpose(const CM& c) {
  // convert a bijective RowPick to the equal ColPick and vice versa
  std::vector<int> p(c.pick.size(), -1);
  for (size_t i = 0; i < c.pick.size(); ++i) p[c.pick[i]] = static_cast<int>(i);
  if (c.k == CM::K::RowPick) return cm_colpick(c.dst, c.src, std::move(p));
  return cm_rowpick(c.dst, c.src, std::move(p));
}

CM cm_kron(const CM& x, const CM& y) {
  Sys d = grid(x.dst, y.dst), s = grid(x.src, y.src);
  // align mixed pick kinds by transposing whichever factor is a bijection
  if ((x.k == CM::K::RowPick && y.k == CM::K::ColPick) ||
      (x.k == CM::K::ColPick && y.k == CM::K::RowPick)) {
    if (pick_bijective(x)) return cm_kron(pick_transpose(x), y);
    if (pick_bijective(y)) return cm_kron(x, pick_transpose(y));
  }
  if (x.k == CM::K::RowPick && y.k == CM::K::RowPick) {
    std::vector<int> p;
    p.reserve(static_cast<size_t>(x.dst.n()) * y.dst.n());
    for (int i = 0; i < x.dst.n(); ++i)
      for (int j = 0; j < y.dst.n(); ++j)
        p.push_back(x.pick[i] < 0 || y.pick[j] < 0 ? -1 : x.pick[i] * y.src.n() + y.pick[j]);
    return cm_rowpick(std::move(d), std::move(s), std::move(p));
  }
  if (x.k == CM::K::ColPick && y.k == CM::K::ColPick) {
    std::vector<int> p;
    p.reserve(static_cast<size_t>(x.src.n()) * y.src.n());
    for (int i = 0; i < x.src.n(); ++i)
      for (int j = 0; j < y.src.n(); ++j)
        p.push_back(x.pick[i] < 0 || y.pick[j] < 0 ? -1 : x.pick[i] * y.dst.n() + y.pick[j]);
    return cm_colpick(std::move(d), std::move(s), std::move(p));
  }
  CM xd = cm_densify(x), yd = cm_densify(y);
  int nr = d.n(), nc = s.n();
  if (xd.packed && yd.packed) {
    std::vector<int64_t> a(static_cast<size_t>(nr) * nc, 0);
    for (int i1 = 0; i1 < x.dst.n(); ++i1)
      for (int j1 = 0; j1 < x.src.n(); ++j1) {
        int64_t xe = xd.di[static_cast<size_t>(i1) * x.src.n() + j1];
        if (xe == 0) continue;
        for (int i2 = 0; i2 < y.dst.n(); ++i2)
          for (int j2 = 0; j2 < y.src.n(); ++j2) {
            int64_t ye = yd.di[static_cast<size_t>(i2) * y.src.n() + j2];
            if (ye == 0) continue;
            size_t r = static_cast<size_t>(i1) * y.dst.n() + i2;
            size_t c = static_cast<size_t>(j1) * y.src.n() + j2;
            a[r * nc + c] = red64(xe * ye, x.dst.ring.modulus);
          }
      }
    return cm_dense64(std::move(d), std::move(s), std::move(a));
  }
  std::vector<mpq_class> a(static_cast<size_t>(nr) * nc, mpq_class(0));
  for (int i1 = 0; i1 < x.dst.n(); ++i1)
    for (int j1 = 0; j1 < x.src.n(); ++j1) {
      mpq_class xe = cm_at(xd, i1, j1);
      if (xe == 0) continue;
      for (int i2 = 0; i2 < y.dst.n(); ++i2)
        for (int j2 = 0; j2 < y.src.n(); ++j2) {
          mpq_class ye = cm_at(yd, i2, j2);
          if (ye == 0) continue;
          size_t r = static_cast<size_t>(i1) * y.dst.n() + i2;
          size_t c = static_cast<size_t>(j1) * y.src.n() + j2;
          a[r * nc + c] = xe * ye;
        }
    }
  return cm_denseq(std::move(d), std::move(s), std::move(a));
}

std::vector<mpq_class> cm_apply(const CM& c, const std::vector<mpq_class>& x) {
  std::vector<mpq_class> y(c.dst.n(), mpq_class(0));
  if (c.k == CM::K::RowPick) {
    for (int i = 0; i < c.dst.n(); ++i)
      if (c.pick[i] >= 0) y[i] = x[c.pick[i]];
  } else if (c.k == CM::K::ColPick) {
    for (int j = 0; j < c.src.n(); ++j)
      if (c.pick[j] >= 0) y[c.pick[j]] += x[j];
  } else {
    for (int i = 0; i < c.dst.n(); ++i)
      for (int j = 0; j < c.src.n(); ++j) {
        mpq_class e = cm_at(c, i, j);
        if (e != 0) y[i] += e * x[j];
      }
  }
  if (c.dst.ring.is_zmod())
    for (int i = 0; i < c.dst.n(); ++i)
      y[i] = mpq_class(zmod_reduce(y[i].get_num(), c.dst.ord[i]));
  return y;
}

CM cm_from_mor(const ModMorphism& f) {
  CM c;
  c.k = CM::K::Dense;
  c.dst = sys_of(f.target);
  c.src = sys_of(f.source);
  c.packed = f.packed;
  c.di = f.ai;
  c.dq = f.aq;
  return c;
}

void validate_entries(const ModMorphism& f) {
  if (!f.source.ring.is_zmod()) return;
  int nr = f.target.ngens(), nc = f.source.ngens();
  for (int i = 0; i < nr; ++i) {
    int64_t b = f.target.factors[i];
    for (int j = 0; j < nc; ++j) {
      int64_t need = cogen(f.source.factors[j], b); // b / gcd(a_j, b)
      if (f.packed) {
        if (f.ai[static_cast<size_t>(i) * nc + j] % need != 0)
          throw Error(ErrKind::NotAMorphism,
                      "entry (" + std::to_string(i) + "," + std::to_string(j) +
                          ") violates the order congruence");
      } else {
        mpz_class r;
        mpz_class nn(static_cast<long>(need));
        mpz_mod(r.get_mpz_t(), f.aq[static_cast<size_t>(i) * nc + j].get_num().get_mpz_t(), nn.get_mpz_t());
        if (r != 0)
          throw Error(ErrKind::NotAMorphism,
                      "entry (" + std::to_string(i) + "," + std::to_string(j) +
                          ") violates the order congruence");
      }
    }
  }
}

ModMorphism cm_to_mor(const FinMod& src, const FinMod& dst, const CM& cin) {
  CM c = cm_densify(cin);
  if (c.dst.ord != dst.factors || c.src.ord != src.factors)
    throw Error(ErrKind::TypeMismatch, "cm_to_mor endpoint mismatch");
  if (!c.packed && can_pack(dst.ring)) { // keep one storage form per ring
    c.di.resize(c.dq.size());
    for (size_t i = 0; i < c.dq.size(); ++i) c.di[i] = c.dq[i].get_num().get_si();
    c.dq.clear();
    c.packed = true;
  }
  ModMorphism f;
  f.source = src;
  f.target = dst;
  f.packed = c.packed;
  f.ai = std::move(c.di);
  f.aq = std::move(c.dq);
  validate_entries(f);
  return f;
}

// ---------------------------------------------------------------------------
// canonicalization of a cyclic order list

struct Canon {
  FinMod mod;
  CM to, from; // to: raw -> canonical, from: canonical -> raw
};

Canon canonize(const Sys& raw) {
  std::vector<int> kept;
  for (int i = 0; i < raw.n(); ++i)
    if (raw.ord[i] != 1) kept.push_back(i);
  std::vector<int> order = kept; // stable ascending sort by order value
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return raw.ord[a] < raw.ord[b]; });
  bool chain = true;
  for (size_t t = 0; t + 1 < order.size(); ++t)
    if (!divides(raw.ord[order[t]], raw.ord[order[t + 1]])) { chain = false; break; }
  if (chain) {
    std::vector<int64_t> fs;
    fs.reserve(order.size());
    for (int p : order) fs.push_back(raw.ord[p]);
    FinMod m{raw.ring, fs};
    Sys cs = sys_of(m);
    std::vector<int> rp(order.begin(), order.end());
    CM to = cm_rowpick(cs, raw, rp);
    CM from = cm_colpick(raw, cs, rp);
    return Canon{m, to, from};
  }
  // general case: Smith of diag(kept orders)
  int kk = static_cast<int>(kept.size());
  std::vector<mpz_class> dd(kk);
  for (int t = 0; t < kk; ++t) dd[t] = static_cast<long>(raw.ord[kept[t]]);
  SmithForm sf = smith_normal_form(IntMatrix::diagonal(dd));
  std::vector<int64_t> fs;
  std::vector<int> drows;
  for (int i = 0; i < kk; ++i) {
    mpz_class di = sf.D.at(i, i);
    if (di != 1) {
      fs.push_back(di.get_si());
      drows.push_back(i);
    }
  }
  FinMod m{raw.ring, fs};
  Sys cs = sys_of(m);
  int nc = static_cast<int>(fs.size());
  std::vector<mpq_class> toq(static_cast<size_t>(nc) * raw.n(), mpq_class(0));
  std::vector<mpq_class> fromq(static_cast<size_t>(raw.n()) * nc, mpq_class(0));
  for (int t = 0; t < nc; ++t) {
    int i = drows[t];
    for (int r = 0; r < kk; ++r) {
      int p = kept[r];
      toq[static_cast<size_t>(t) * raw.n() + p] = mpq_class(zmod_reduce(sf.U.at(i, r), fs[t]));
      fromq[static_cast<size_t>(p) * nc + t] = mpq_class(zmod_reduce(sf.Uinv.at(r, i), raw.ord[p]));
    }
  }
  CM to = cm_denseq(cs, raw, std::move(toq));
  CM from = cm_denseq(raw, cs, std::move(fromq));
  if (can_pack(raw.ring)) { to = cm_densify(to); from = cm_densify(from); }
  // repack to int64 where possible
  if (can_pack(raw.ring)) {
    auto repack = [](CM& c) {
      if (c.packed) return;
      std::vector<int64_t> a(c.dq.size());
      for (size_t i = 0; i < c.dq.size(); ++i) a[i] = c.dq[i].get_num().get_si();
      c.di = std::move(a);
      c.dq.clear();
      c.packed = true;
    };
    repack(to);
    repack(from);
  }
  return Canon{m, to, from};
}

struct TData {
  Sys raw;
  Canon c;
};

TData tensor_data(const FinMod& m, const FinMod& n) {
  require_same_ring(m.ring, n.ring);
  Sys raw = grid(sys_of(m), sys_of(n));
  return TData{raw, canonize(raw)};
}

// hom raw grid: pairs (j, i), source-major; same orders as the tensor grid
TData hom_data(const FinMod& m, const FinMod& n) {
  require_same_ring(m.ring, n.ring);
  Sys raw = grid(sys_of(m), sys_of(n));
  return TData{raw, canonize(raw)};
}

IntMatrix lift_int(const ModMorphism& f, mpz_class& den) {
  int nr = f.target.ngens(), nc = f.source.ngens();
  IntMatrix w(nr, nc);
  den = 1;
  if (f.packed) {
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) w.at(i, j) = static_cast<long>(f.ai[static_cast<size_t>(i) * nc + j]);
    return w;
  }
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), f.aq[static_cast<size_t>(i) * nc + j].get_den().get_mpz_t());
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) {
      const mpq_class& e = f.aq[static_cast<size_t>(i) * nc + j];
      w.at(i, j) = e.get_num() * (den / e.get_den());
    }
  return w;
}

IntMatrix diag_orders(const std::vector<int64_t>& fs) {
  std::vector<mpz_class> d(fs.size());
  for (size_t i = 0; i < fs.size(); ++i) d[i] = static_cast<long>(fs[i]);
  return IntMatrix::diagonal(d);
}

// integer inverse applied to an integer matrix: returns P^{-1} * X, which must
// be integral (P nonsingular, columns of X inside the lattice spanned by P)
IntMatrix exact_solve_lattice(const IntMatrix& p, const IntMatrix& x) {
  SmithForm sp = smith_normal_form(p);
  // P^{-1} = V D^{-1} U
  IntMatrix t = imat_mul(sp.U, x);
  for (int i = 0; i < t.rows; ++i) {
    const mpz_class& d = sp.D.at(i, i);
    for (int j = 0; j < t.cols; ++j) {
      if (t.at(i, j) % d != 0)
        throw Error(ErrKind::SolveFailed, "lattice solve not integral");
      t.at(i, j) /= d;
    }
  }
  return imat_mul(sp.V, t);
}

ModMorphism mor_from_int(const FinMod& src, const FinMod& dst, const IntMatrix& w) {
  int nr = dst.ngens(), nc = src.ngens();
  if (can_pack(dst.ring)) {
    std::vector<int64_t> a(static_cast<size_t>(nr) * nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j)
        a[static_cast<size_t>(i) * nc + j] = zmod_reduce(w.at(i, j), dst.factors[i]).get_si();
    return mor64(src, dst, a);
  }
  std::vector<mpq_class> a(static_cast<size_t>(nr) * nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j)
      a[static_cast<size_t>(i) * nc + j] = mpq_class(zmod_reduce(w.at(i, j), dst.ring.is_zmod() ? dst.factors[i] : 0));
  return mor(src, dst, a);
}

} // namespace

// ---------------------------------------------------------------------------

FinMod FinMod::of(const BaseRing& r, std::vector<std::int64_t> fs) {
  if (r.is_zmod()) {
    for (size_t i = 0; i < fs.size(); ++i) {
      if (fs[i] < 2 || r.modulus % fs[i] != 0)
        throw Error(ErrKind::TypeMismatch, "invariant factor must be >= 2 and divide the modulus");
      if (i + 1 < fs.size() && fs[i + 1] % fs[i] != 0)
        throw Error(ErrKind::TypeMismatch, "invariant factors must form a divisibility chain");
    }
  } else {
    for (auto f : fs)
      if (f != 0) throw Error(ErrKind::TypeMismatch, "factors over Q must be 0");
  }
  return FinMod{r, std::move(fs)};
}

std::optional<mpz_class> FinMod::card() const {
  if (!ring.is_zmod()) return ngens() == 0 ? std::optional<mpz_class>(1) : std::nullopt;
  mpz_class c = 1;
  for (auto f : factors) c *= static_cast<long>(f);
  return c;
}

Elem elem_zero(const FinMod& m) { return Elem(m.ngens(), mpq_class(0)); }

Elem elem_reduce(const FinMod& m, Elem x) {
  if (m.ring.is_zmod())
    for (int i = 0; i < m.ngens(); ++i) x[i] = mpq_class(zmod_reduce(x[i].get_num(), m.factors[i]));
  return x;
}

Elem elem_add(const FinMod& m, const Elem& x, const Elem& y) {
  Elem z(m.ngens());
  for (int i = 0; i < m.ngens(); ++i) z[i] = x[i] + y[i];
  return elem_reduce(m, std::move(z));
}

Elem elem_scale(const FinMod& m, const mpq_class& c, const Elem& x) {
  Elem z(m.ngens());
  for (int i = 0; i < m.ngens(); ++i) z[i] = c * x[i];
  return elem_reduce(m, std::move(z));
}

ModMorphism mor(const FinMod& src, const FinMod& dst, const std::vector<mpq_class>& entries) {
  require_same_ring(src.ring, dst.ring);
  if (entries.size() != static_cast<size_t>(src.ngens()) * dst.ngens())
    throw Error(ErrKind::TypeMismatch, "entry count mismatch");
  ModMorphism f;
  f.source = src;
  f.target = dst;
  f.packed = can_pack(src.ring);
  int nc = src.ngens();
  if (f.packed) {
    f.ai.resize(entries.size());
    for (int i = 0; i < dst.ngens(); ++i)
      for (int j = 0; j < nc; ++j) {
        const mpq_class& e = entries[static_cast<size_t>(i) * nc + j];
        if (e.get_den() != 1) throw Error(ErrKind::TypeMismatch, "fraction entry over Z/m");
        f.ai[static_cast<size_t>(i) * nc + j] = zmod_reduce(e.get_num(), dst.factors[i]).get_si();
      }
  } else {
    f.aq.resize(entries.size());
    for (int i = 0; i < dst.ngens(); ++i)
      for (int j = 0; j < nc; ++j) {
        const mpq_class& e = entries[static_cast<size_t>(i) * nc + j];
        if (src.ring.is_zmod()) {
          if (e.get_den() != 1) throw Error(ErrKind::TypeMismatch, "fraction entry over Z/m");
          f.aq[static_cast<size_t>(i) * nc + j] = mpq_class(zmod_reduce(e.get_num(), dst.factors[i]));
        } else {
          f.aq[static_cast<size_t>(i) * nc + j] = e;
        }
      }
  }
  validate_entries(f);
  return f;
}

ModMorphism mor64(const FinMod& src, const FinMod& dst, const std::vector<std::int64_t>& entries) {
  require_same_ring(src.ring, dst.ring);
  if (entries.size() != static_cast<size_t>(src.ngens()) * dst.ngens())
    throw Error(ErrKind::TypeMismatch, "entry count mismatch");
  if (!can_pack(src.ring)) {
    std::vector<mpq_class> q(entries.size());
    for (size_t i = 0; i < entries.size(); ++i) q[i] = mpq_class(static_cast<long>(entries[i]));
    return mor(src, dst, q);
  }
  ModMorphism f;
  f.source = src;
  f.target = dst;
  f.packed = true;
  f.ai.resize(entries.size());
  int nc = src.ngens();
  for (int i = 0; i < dst.ngens(); ++i)
    for (int j = 0; j < nc; ++j)
      f.ai[static_cast<size_t>(i) * nc + j] = red64(entries[static_cast<size_t>(i) * nc + j], dst.factors[i]);
  validate_entries(f);
  return f;
}

ModMorphism mor_zero(const FinMod& src, const FinMod& dst) {
  require_same_ring(src.ring, dst.ring);
  ModMorphism f;
  f.source = src;
  f.target = dst;
  f.packed = can_pack(src.ring);
  if (f.packed)
    f.ai.assign(static_cast<size_t>(src.ngens()) * dst.ngens(), 0);
  else
    f.aq.assign(static_cast<size_t>(src.ngens()) * dst.ngens(), mpq_class(0));
  return f;
}

ModMorphism identity(const FinMod& m) {
  ModMorphism f = mor_zero(m, m);
  for (int i = 0; i < m.ngens(); ++i) {
    if (f.packed)
      f.ai[static_cast<size_t>(i) * m.ngens() + i] = red64(1, m.factors[i]);
    else
      f.aq[static_cast<size_t>(i) * m.ngens() + i] = 1;
  }
  return f;
}

ModMorphism compose(const ModMorphism& g, const ModMorphism& f) {
  if (!(g.source == f.target))
    throw Error(ErrKind::TypeMismatch, "compose endpoint mismatch");
  return cm_to_mor(f.source, g.target, cm_compose(cm_from_mor(g), cm_from_mor(f)));
}

ModMorphism mor_add(const ModMorphism& f, const ModMorphism& g) {
  if (!(f.source == g.source) || !(f.target == g.target))
    throw Error(ErrKind::TypeMismatch, "mor_add endpoint mismatch");
  ModMorphism h = f;
  if (f.packed) {
    int nc = f.source.ngens();
    for (int i = 0; i < f.target.ngens(); ++i)
      for (int j = 0; j < nc; ++j) {
        size_t ix = static_cast<size_t>(i) * nc + j;
        h.ai[ix] = red64(f.ai[ix] + g.ai[ix], f.target.factors[i]);
      }
  } else {
    int nc = f.source.ngens();
    for (int i = 0; i < f.target.ngens(); ++i)
      for (int j = 0; j < nc; ++j) {
        size_t ix = static_cast<size_t>(i) * nc + j;
        h.aq[ix] = f.aq[ix] + g.aq[ix];
        if (f.source.ring.is_zmod()) h.aq[ix] = mpq_class(zmod_reduce(h.aq[ix].get_num(), f.target.factors[i]));
      }
  }
  return h;
}

ModMorphism mor_sub(const ModMorphism& f, const ModMorphism& g) {
  if (!(f.source == g.source) || !(f.target == g.target))
    throw Error(ErrKind::TypeMismatch, "mor_sub endpoint mismatch");
  ModMorphism h = f;
  int nc = f.source.ngens();
  for (int i = 0; i < f.target.ngens(); ++i)
    for (int j = 0; j < nc; ++j) {
      size_t ix = static_cast<size_t>(i) * nc + j;
      if (f.packed)
        h.ai[ix] = red64(f.ai[ix] - g.ai[ix], f.target.factors[i]);
      else {
        h.aq[ix] = f.aq[ix] - g.aq[ix];
        if (f.source.ring.is_zmod()) h.aq[ix] = mpq_class(zmod_reduce(h.aq[ix].get_num(), f.target.factors[i]));
      }
    }
  return h;
}

Elem apply_mor(const ModMorphism& f, const Elem& x) {
  if (x.size() != static_cast<size_t>(f.source.ngens()))
    throw Error(ErrKind::TypeMismatch, "apply length mismatch");
  Elem y(f.target.ngens(), mpq_class(0));
  int nc = f.source.ngens();
  for (int i = 0; i < f.target.ngens(); ++i)
    for (int j = 0; j < nc; ++j) y[i] += f.at(i, j) * x[j];
  return elem_reduce(f.target, std::move(y));
}

SumData direct_sum(const FinMod& m, const FinMod& n) {
  require_same_ring(m.ring, n.ring);
  Sys raw{m.ring, {}};
  raw.ord = m.factors;
  raw.ord.insert(raw.ord.end(), n.factors.begin(), n.factors.end());
  Canon c = canonize(raw);
  int nm = m.ngens(), nn = n.ngens();
  std::vector<int> p1(nm), p2(nn);
  std::iota(p1.begin(), p1.end(), 0);
  std::iota(p2.begin(), p2.end(), nm);
  CM e1 = cm_colpick(raw, sys_of(m), p1);
  CM e2 = cm_colpick(raw, sys_of(n), p2);
  CM r1 = cm_rowpick(sys_of(m), raw, p1);
  CM r2 = cm_rowpick(sys_of(n), raw, p2);
  SumData d{c.mod,
            cm_to_mor(m, c.mod, cm_compose(c.to, e1)),
            cm_to_mor(n, c.mod, cm_compose(c.to, e2)),
            cm_to_mor(c.mod, m, cm_compose(r1, c.from)),
            cm_to_mor(c.mod, n, cm_compose(r2, c.from))};
  return d;
}

FinMod tensor(const FinMod& m, const FinMod& n) { return tensor_data(m, n).c.mod; }

ModMorphism tensor_mor(const ModMorphism& f, const ModMorphism& g) {
  require_same_ring(f.source.ring, g.source.ring);
  TData s = tensor_data(f.source, g.source);
  TData t = tensor_data(f.target, g.target);
  CM k = cm_kron(cm_from_mor(f), cm_from_mor(g));
  CM r = cm_compose(t.c.to, cm_compose(k, s.c.from));
  return cm_to_mor(s.c.mod, t.c.mod, r);
}

ModMorphism swap_mor(const FinMod& m, const FinMod& n) {
  TData mn = tensor_data(m, n), nm = tensor_data(n, m);
  int a = m.ngens(), b = n.ngens();
  std::vector<int> p(static_cast<size_t>(a) * b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) p[static_cast<size_t>(i) * b + j] = j * a + i;
  CM perm = cm_colpick(nm.raw, mn.raw, std::move(p));
  CM r = cm_compose(nm.c.to, cm_compose(perm, mn.c.from));
  return cm_to_mor(mn.c.mod, nm.c.mod, r);
}

ModMorphism assoc(const FinMod& m, const FinMod& n, const FinMod& p) {
  TData mn = tensor_data(m, n), np = tensor_data(n, p);
  TData l = tensor_data(mn.c.mod, p), r = tensor_data(m, np.c.mod);
  // raw((M@N)@P) -> triple grid -> raw(M@(N@P)), via the tracked identifications
  CM e = cm_kron(mn.c.from, cm_identity(sys_of(p)));
  CM fp = cm_kron(cm_identity(sys_of(m)), np.c.to);
  CM mid = cm_compose(fp, e);
  CM full = cm_compose(r.c.to, cm_compose(mid, l.c.from));
  return cm_to_mor(l.c.mod, r.c.mod, full);
}

ModMorphism assoc_inv(const FinMod& m, const FinMod& n, const FinMod& p) {
  TData mn = tensor_data(m, n), np = tensor_data(n, p);
  TData l = tensor_data(mn.c.mod, p), r = tensor_data(m, np.c.mod);
  CM e = cm_kron(mn.c.to, cm_identity(sys_of(p)));
  CM fp = cm_kron(cm_identity(sys_of(m)), np.c.from);
  CM mid = cm_compose(e, fp);
  CM full = cm_compose(l.c.to, cm_compose(mid, r.c.from));
  return cm_to_mor(r.c.mod, l.c.mod, full);
}

ModMorphism lunit(const FinMod& m) {
  FinMod u = FinMod::unit(m.ring);
  TData t = tensor_data(u, m);
  std::vector<int> p(m.ngens());
  std::iota(p.begin(), p.end(), 0);
  CM e = cm_rowpick(sys_of(m), t.raw, p);
  return cm_to_mor(t.c.mod, m, cm_compose(e, t.c.from));
}

ModMorphism lunit_inv(const FinMod& m) {
  FinMod u = FinMod::unit(m.ring);
  TData t = tensor_data(u, m);
  std::vector<int> p(m.ngens());
  std::iota(p.begin(), p.end(), 0);
  CM e = cm_colpick(t.raw, sys_of(m), p);
  return cm_to_mor(m, t.c.mod, cm_compose(t.c.to, e));
}

ModMorphism runit(const FinMod& m) {
  FinMod u = FinMod::unit(m.ring);
  TData t = tensor_data(m, u);
  std::vector<int> p(m.ngens());
  std::iota(p.begin(), p.end(), 0);
  CM e = cm_rowpick(sys_of(m), t.raw, p);
  return cm_to_mor(t.c.mod, m, cm_compose(e, t.c.from));
}

ModMorphism runit_inv(const FinMod& m) {
  FinMod u = FinMod::unit(m.ring);
  TData t = tensor_data(m, u);
  std::vector<int> p(m.ngens());
  std::iota(p.begin(), p.end(), 0);
  CM e = cm_colpick(t.raw, sys_of(m), p);
  return cm_to_mor(m, t.c.mod, cm_compose(t.c.to, e));
}

Elem tensor_coords(const FinMod& m, const FinMod& n, int i, int j) {
  TData t = tensor_data(m, n);
  Elem raw(t.raw.n(), mpq_class(0));
  raw[static_cast<size_t>(i) * n.ngens() + j] = 1;
  return cm_apply(t.c.to, raw);
}

ModMorphism mor_to_tensor(const FinMod& m, const FinMod& a, const FinMod& b,
                          const std::vector<std::vector<mpq_class>>& cols) {
  TData t = tensor_data(a, b);
  if (cols.size() != static_cast<size_t>(m.ngens()))
    throw Error(ErrKind::TypeMismatch, "mor_to_tensor column count");
  std::vector<mpq_class> raw(static_cast<size_t>(t.raw.n()) * m.ngens(), mpq_class(0));
  for (int j = 0; j < m.ngens(); ++j) {
    if (cols[j].size() != static_cast<size_t>(t.raw.n()))
      throw Error(ErrKind::TypeMismatch, "mor_to_tensor raw length");
    for (int i = 0; i < t.raw.n(); ++i) raw[static_cast<size_t>(i) * m.ngens() + j] = cols[j][i];
  }
  CM r = cm_denseq(t.raw, sys_of(m), std::move(raw));
  return cm_to_mor(m, t.c.mod, cm_compose(t.c.to, r));
}

ModMorphism mor_from_tensor(const FinMod& a, const FinMod& b, const FinMod& t,
                            const std::vector<Elem>& images) {
  TData td = tensor_data(a, b);
  if (images.size() != static_cast<size_t>(td.raw.n()))
    throw Error(ErrKind::TypeMismatch, "mor_from_tensor image count");
  std::vector<mpq_class> raw(static_cast<size_t>(t.ngens()) * td.raw.n(), mpq_class(0));
  for (int j = 0; j < td.raw.n(); ++j) {
    if (images[j].size() != static_cast<size_t>(t.ngens()))
      throw Error(ErrKind::TypeMismatch, "mor_from_tensor image length");
    for (int i = 0; i < t.ngens(); ++i) raw[static_cast<size_t>(i) * td.raw.n() + j] = images[j][i];
  }
  CM r = cm_denseq(sys_of(t), td.raw, std::move(raw));
  // bilinearity: the image of a raw pair must be killed by the pair's order
  if (t.ring.is_zmod()) {
    for (int j = 0; j < td.raw.n(); ++j)
      for (int i = 0; i < t.ngens(); ++i) {
        int64_t need = cogen(td.raw.ord[j], t.factors[i]);
        mpz_class v = zmod_reduce(cm_at(r, i, j).get_num(), t.factors[i]);
        if (v % static_cast<long>(need) != 0)
          throw Error(ErrKind::NotAMorphism, "images do not define a bilinear map");
      }
  }
  return cm_to_mor(td.c.mod, t, cm_compose(r, td.c.from));
}

// ---------------------------------------------------------------------------
// internal hom

FinMod hom_module(const FinMod& m, const FinMod& n) { return hom_data(m, n).c.mod; }

Elem hom_encode(const ModMorphism& f) {
  const FinMod& m = f.source;
  const FinMod& n = f.target;
  TData h = hom_data(m, n);
  Elem raw(h.raw.n(), mpq_class(0));
  for (int j = 0; j < m.ngens(); ++j)
    for (int i = 0; i < n.ngens(); ++i) {
      mpq_class e = f.at(i, j);
      int64_t cg = cogen(m.factors[j], n.factors[i]);
      if (m.ring.is_zmod()) {
        mpz_class num = e.get_num();
        raw[static_cast<size_t>(j) * n.ngens() + i] = mpq_class(num / static_cast<long>(cg));
      } else {
        raw[static_cast<size_t>(j) * n.ngens() + i] = e;
      }
    }
  return cm_apply(h.c.to, raw);
}

ModMorphism hom_decode(const FinMod& m, const FinMod& n, const Elem& coords) {
  TData h = hom_data(m, n);
  if (coords.size() != static_cast<size_t>(h.c.mod.ngens()))
    throw Error(ErrKind::TypeMismatch, "hom_decode length");
  Elem raw = cm_apply(h.c.from, coords);
  std::vector<mpq_class> a(static_cast<size_t>(n.ngens()) * m.ngens(), mpq_class(0));
  for (int j = 0; j < m.ngens(); ++j)
    for (int i = 0; i < n.ngens(); ++i) {
      int64_t cg = cogen(m.factors[j], n.factors[i]);
      a[static_cast<size_t>(i) * m.ngens() + j] = raw[static_cast<size_t>(j) * n.ngens() + i] * static_cast<long>(cg);
    }
  return mor(m, n, a);
}

ModMorphism eval_mor(const FinMod& x, const FinMod& z) {
  FinMod h = hom_module(x, z);
  TData t = tensor_data(h, x);
  int nh = h.ngens(), nx = x.ngens(), nz = z.ngens();
  std::vector<mpq_class> e(static_cast<size_t>(nz) * t.raw.n(), mpq_class(0));
  for (int hg = 0; hg < nh; ++hg) {
    Elem basis(nh, mpq_class(0));
    basis[hg] = 1;
    ModMorphism phi = hom_decode(x, z, basis);
    for (int j = 0; j < nx; ++j)
      for (int i = 0; i < nz; ++i)
        e[static_cast<size_t>(i) * t.raw.n() + (static_cast<size_t>(hg) * nx + j)] = phi.at(i, j);
  }
  CM em = cm_denseq(sys_of(z), t.raw, std::move(e));
  return cm_to_mor(t.c.mod, z, cm_compose(em, t.c.from));
}

ModMorphism curry(const ModMorphism& f, const FinMod& y, const FinMod& x) {
  TData t = tensor_data(y, x);
  if (!(f.source == t.c.mod))
    throw Error(ErrKind::TypeMismatch, "curry: source is not the stated tensor");
  const FinMod& z = f.target;
  CM raw = cm_compose(cm_from_mor(f), t.c.to); // raw grid -> Z
  FinMod h = hom_module(x, z);
  std::vector<mpq_class> cur(static_cast<size_t>(h.ngens()) * y.ngens(), mpq_class(0));
  int nx = x.ngens(), nz = z.ngens();
  CM rawd = cm_densify(raw);
  for (int c = 0; c < y.ngens(); ++c) {
    std::vector<mpq_class> phi(static_cast<size_t>(nz) * nx, mpq_class(0));
    for (int j = 0; j < nx; ++j)
      for (int i = 0; i < nz; ++i)
        phi[static_cast<size_t>(i) * nx + j] = cm_at(rawd, i, c * nx + j);
    Elem enc = hom_encode(mor(x, z, phi));
    for (int i = 0; i < h.ngens(); ++i) cur[static_cast<size_t>(i) * y.ngens() + c] = enc[i];
  }
  return mor(y, h, cur);
}

ModMorphism uncurry(const ModMorphism& g, const FinMod& x, const FinMod& z) {
  FinMod h = hom_module(x, z);
  if (!(g.target == h))
    throw Error(ErrKind::TypeMismatch, "uncurry: target is not the stated hom");
  return compose(eval_mor(x, z), tensor_mor(g, identity(x)));
}

ModMorphism hom_post(const FinMod& w, const ModMorphism& g) {
  return curry(compose(g, eval_mor(w, g.source)), hom_module(w, g.source), w);
}

ModMorphism hom_pre(const ModMorphism& f, const FinMod& x) {
  FinMod h = hom_module(f.target, x);
  return curry(compose(eval_mor(f.target, x), tensor_mor(identity(h), f)), h, f.source);
}

// ---------------------------------------------------------------------------
// limits / colimits

SubData kernel(const ModMorphism& f) {
  const FinMod& src = f.source;
  const FinMod& dst = f.target;
  int s = src.ngens(), r = dst.ngens();
  mpz_class den;
  IntMatrix fi = lift_int(f, den);
  if (src.ring.is_zmod()) {
    IntMatrix w(r, s + r);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < s; ++j) w.at(i, j) = fi.at(i, j);
      w.at(i, s + i) = static_cast<long>(dst.factors[i]);
    }
    SmithForm sf = smith_normal_form(w);
    // lattice L = {x : Fx in B Z^r} is the x-block of ker(w); basis:
    IntMatrix p(s, s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) p.at(i, j) = sf.V.at(i, r + j);
    IntMatrix q = exact_solve_lattice(p, diag_orders(src.factors));
    SmithForm sq = smith_normal_form(q);
    IntMatrix pp = imat_mul(p, sq.Uinv);
    std::vector<int64_t> fs;
    std::vector<int> keep;
    for (int i = 0; i < s; ++i) {
      mpz_class d = sq.D.at(i, i);
      if (d != 1) { fs.push_back(d.get_si()); keep.push_back(i); }
    }
    FinMod k{src.ring, fs};
    IntMatrix cols(s, static_cast<int>(keep.size()));
    for (size_t t = 0; t < keep.size(); ++t)
      for (int i = 0; i < s; ++i) cols.at(i, static_cast<int>(t)) = pp.at(i, keep[t]);
    return SubData{k, mor_from_int(k, src, cols)};
  }
  SmithForm sf = smith_normal_form(fi);
  int mn = std::min(r, s);
  std::vector<int> keep;
  for (int i = 0; i < s; ++i)
    if (i >= mn || sf.D.at(i, i) == 0) keep.push_back(i);
  FinMod k = FinMod::free_of_rank(src.ring, static_cast<int>(keep.size()));
  std::vector<mpq_class> a(static_cast<size_t>(s) * keep.size());
  for (size_t t = 0; t < keep.size(); ++t)
    for (int i = 0; i < s; ++i) a[static_cast<size_t>(i) * keep.size() + t] = mpq_class(sf.V.at(i, keep[t]));
  return SubData{k, mor(k, src, a)};
}

QuotData cokernel(const ModMorphism& f) {
  const FinMod& src = f.source;
  const FinMod& dst = f.target;
  int s = src.ngens(), r = dst.ngens();
  mpz_class den;
  IntMatrix fi = lift_int(f, den);
  if (src.ring.is_zmod()) {
    IntMatrix w(r, s + r);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < s; ++j) w.at(i, j) = fi.at(i, j);
      w.at(i, s + i) = static_cast<long>(dst.factors[i]);
    }
    SmithForm sf = smith_normal_form(w);
    std::vector<int64_t> fs;
    std::vector<int> keep;
    for (int i = 0; i < r; ++i) {
      mpz_class d = sf.D.at(i, i);
      if (d == 0) throw Error(ErrKind::SolveFailed, "cokernel rank defect");
      if (d != 1) { fs.push_back(d.get_si()); keep.push_back(i); }
    }
    FinMod q{src.ring, fs};
    IntMatrix rows(static_cast<int>(keep.size()), r);
    for (size_t t = 0; t < keep.size(); ++t)
      for (int j = 0; j < r; ++j) rows.at(static_cast<int>(t), j) = sf.U.at(keep[t], j);
    return QuotData{q, mor_from_int(dst, q, rows)};
  }
  SmithForm sf = smith_normal_form(fi);
  int mn = std::min(r, s);
  int rank = 0;
  for (int i = 0; i < mn; ++i)
    if (sf.D.at(i, i) != 0) ++rank;
  FinMod q = FinMod::free_of_rank(src.ring, r - rank);
  std::vector<mpq_class> a(static_cast<size_t>(r - rank) * r);
  for (int t = rank; t < r; ++t)
    for (int j = 0; j < r; ++j) a[static_cast<size_t>(t - rank) * r + j] = mpq_class(sf.U.at(t, j));
  return QuotData{q, mor(dst, q, a)};
}

ImageData image(const ModMorphism& f) {
  const FinMod& src = f.source;
  const FinMod& dst = f.target;
  int s = src.ngens(), r = dst.ngens();
  mpz_class den;
  IntMatrix fi = lift_int(f, den);
  if (src.ring.is_zmod()) {
    IntMatrix w(r, s + r);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < s; ++j) w.at(i, j) = fi.at(i, j);
      w.at(i, s + i) = static_cast<long>(dst.factors[i]);
    }
    SmithForm sf = smith_normal_form(w);
    // column lattice S = Uinv . D; image module is S / B Z^r
    IntMatrix ps(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) ps.at(i, j) = sf.Uinv.at(i, j) * sf.D.at(j, j);
    IntMatrix q = exact_solve_lattice(ps, diag_orders(dst.factors));
    SmithForm sq = smith_normal_form(q);
    IntMatrix pp = imat_mul(ps, sq.Uinv);
    std::vector<int64_t> fs;
    std::vector<int> keep;
    for (int i = 0; i < r; ++i) {
      mpz_class d = sq.D.at(i, i);
      if (d != 1) { fs.push_back(d.get_si()); keep.push_back(i); }
    }
    FinMod im{src.ring, fs};
    IntMatrix cols(r, static_cast<int>(keep.size()));
    for (size_t t = 0; t < keep.size(); ++t)
      for (int i = 0; i < r; ++i) cols.at(i, static_cast<int>(t)) = pp.at(i, keep[t]);
    ModMorphism incl = mor_from_int(im, dst, cols);
    auto proj = factor_through_mono(f, incl);
    if (!proj) throw Error(ErrKind::SolveFailed, "image factorization failed");
    return ImageData{im, incl, *proj};
  }
  SmithForm sf = smith_normal_form(fi);
  int mn = std::min(r, s);
  int rank = 0;
  for (int i = 0; i < mn; ++i)
    if (sf.D.at(i, i) != 0) ++rank;
  FinMod im = FinMod::free_of_rank(src.ring, rank);
  std::vector<mpq_class> a(static_cast<size_t>(r) * rank);
  for (int t = 0; t < rank; ++t)
    for (int i = 0; i < r; ++i)
      a[static_cast<size_t>(i) * rank + t] = mpq_class(sf.Uinv.at(i, t) * sf.D.at(t, t));
  ModMorphism incl = mor(im, dst, a);
  auto proj = factor_through_mono(f, incl);
  if (!proj) throw Error(ErrKind::SolveFailed, "image factorization failed");
  return ImageData{im, incl, *proj};
}

SubData equaliser(const ModMorphism& f, const ModMorphism& g) { return kernel(mor_sub(f, g)); }
QuotData coequaliser(const ModMorphism& f, const ModMorphism& g) { return cokernel(mor_sub(f, g)); }

PullbackData pullback(const ModMorphism& f, const ModMorphism& g) {
  if (!(f.target == g.target)) throw Error(ErrKind::TypeMismatch, "pullback cospan mismatch");
  SumData d = direct_sum(f.source, g.source);
  ModMorphism h = mor_sub(compose(f, d.proj1), compose(g, d.proj2));
  SubData k = kernel(h);
  return PullbackData{k.obj, compose(d.proj1, k.incl), compose(d.proj2, k.incl)};
}

PushoutData pushout(const ModMorphism& f, const ModMorphism& g) {
  if (!(f.source == g.source)) throw Error(ErrKind::TypeMismatch, "pushout span mismatch");
  SumData d = direct_sum(f.target, g.target);
  ModMorphism h = mor_sub(compose(d.inj1, f), compose(d.inj2, g));
  QuotData c = cokernel(h);
  return PushoutData{c.obj, compose(c.proj, d.inj1), compose(c.proj, d.inj2)};
}

bool is_mono(const ModMorphism& f) { return kernel(f).obj.ngens() == 0; }
bool is_epi(const ModMorphism& f) { return cokernel(f).obj.ngens() == 0; }

IsoCheck is_iso(const ModMorphism& f) {
  IsoCheck r;
  if (!is_mono(f) || !is_epi(f)) return r;
  const FinMod& n = f.target;
  std::vector<mpq_class> inv(static_cast<size_t>(f.source.ngens()) * n.ngens());
  for (int i = 0; i < n.ngens(); ++i) {
    Elem e(n.ngens(), mpq_class(0));
    e[i] = 1;
    auto x = solve_elem(f, e);
    if (!x) return r;
    for (int j = 0; j < f.source.ngens(); ++j)
      inv[static_cast<size_t>(j) * n.ngens() + i] = (*x)[j];
  }
  ModMorphism g = mor(n, f.source, inv);
  if (!(compose(f, g) == identity(n)) || !(compose(g, f) == identity(f.source))) return r;
  r.iso = true;
  r.inverse = g;
  return r;
}

std::optional<Elem> solve_elem(const ModMorphism& f, const Elem& y) {
  const FinMod& src = f.source;
  const FinMod& dst = f.target;
  if (y.size() != static_cast<size_t>(dst.ngens()))
    throw Error(ErrKind::TypeMismatch, "solve_elem length");
  int s = src.ngens(), r = dst.ngens();
  mpz_class den;
  IntMatrix fi = lift_int(f, den);
  if (src.ring.is_zmod()) {
    IntMatrix w(r, s + r);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < s; ++j) w.at(i, j) = fi.at(i, j);
      w.at(i, s + i) = static_cast<long>(dst.factors[i]);
    }
    SmithForm sf = smith_normal_form(w);
    std::vector<mpz_class> t(r, mpz_class(0));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) t[i] += sf.U.at(i, j) * y[j].get_num();
    std::vector<mpz_class> z(s + r, mpz_class(0));
    for (int i = 0; i < r; ++i) {
      const mpz_class& d = sf.D.at(i, i);
      if (d == 0) { if (t[i] != 0) return std::nullopt; continue; }
      if (t[i] % d != 0) return std::nullopt;
      z[i] = t[i] / d;
    }
    Elem x(s, mpq_class(0));
    for (int i = 0; i < s; ++i) {
      mpz_class acc = 0;
      for (int j = 0; j < s + r; ++j) acc += sf.V.at(i, j) * z[j];
      x[i] = mpq_class(zmod_reduce(acc, src.factors[i]));
    }
    return x;
  }
  SmithForm sf = smith_normal_form(fi);
  std::vector<mpq_class> t(r, mpq_class(0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (sf.U.at(i, j) != 0) t[i] += mpq_class(sf.U.at(i, j)) * (mpq_class(den) * y[j]);
  int mn = std::min(r, s);
  std::vector<mpq_class> z(s, mpq_class(0));
  for (int i = 0; i < r; ++i) {
    mpq_class d = i < mn ? mpq_class(sf.D.at(i, i)) : mpq_class(0);
    if (d == 0) {
      if (t[i] != 0) return std::nullopt;
    } else {
      z[i] = t[i] / d;
    }
  }
  Elem x(s, mpq_class(0));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      if (sf.V.at(i, j) != 0) x[i] += mpq_class(sf.V.at(i, j)) * z[j];
  return x;
}

std::optional<ModMorphism> factor_through_mono(const ModMorphism& f, const ModMorphism& incl) {
  if (!(f.target == incl.target)) throw Error(ErrKind::TypeMismatch, "factor_through_mono targets");
  int s = f.source.ngens(), k = incl.source.ngens();
  std::vector<mpq_class> a(static_cast<size_t>(k) * s);
  for (int j = 0; j < s; ++j) {
    Elem col(f.target.ngens());
    for (int i = 0; i < f.target.ngens(); ++i) col[i] = f.at(i, j);
    auto x = solve_elem(incl, col);
    if (!x) return std::nullopt;
    for (int i = 0; i < k; ++i) a[static_cast<size_t>(i) * s + j] = (*x)[i];
  }
  ModMorphism g = mor(f.source, incl.source, a);
  if (!(compose(incl, g) == f)) return std::nullopt;
  return g;
}

std::optional<ModMorphism> factor_through_epi(const ModMorphism& f, const ModMorphism& proj) {
  if (!(f.source == proj.source)) throw Error(ErrKind::TypeMismatch, "factor_through_epi sources");
  int q = proj.target.ngens(), n = f.target.ngens();
  std::vector<mpq_class> a(static_cast<size_t>(n) * q);
  for (int c = 0; c < q; ++c) {
    Elem e(q, mpq_class(0));
    e[c] = 1;
    auto u = solve_elem(proj, e);
    if (!u) return std::nullopt;
    Elem img = apply_mor(f, *u);
    for (int i = 0; i < n; ++i) a[static_cast<size_t>(i) * q + c] = img[i];
  }
  ModMorphism g;
  try {
    g = mor(proj.target, f.target, a);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!(compose(g, proj) == f)) return std::nullopt;
  return g;
}

bool same_submodule(const ModMorphism& m1, const ModMorphism& m2) {
  if (!(m1.target == m2.target)) throw Error(ErrKind::TypeMismatch, "same_submodule targets");
  return factor_through_mono(m1, m2).has_value() && factor_through_mono(m2, m1).has_value();
}

std::vector<Elem> enumerate_elements(const FinMod& m, std::uint64_t bound) {
  auto c = m.card();
  if (!c) throw Error(ErrKind::InfiniteRing, "cannot enumerate a nonzero module over Q");
  if (*c > static_cast<long>(std::min<std::uint64_t>(bound, (1ULL << 62)))) {
    throw Error(ErrKind::TooLarge, "module has " + c->get_str() + " elements, bound is " + std::to_string(bound));
  }
  std::vector<Elem> out;
  out.reserve(c->get_ui());
  int n = m.ngens();
  Elem cur(n, mpq_class(0));
  for (;;) {
    out.push_back(cur);
    int i = n - 1;
    for (; i >= 0; --i) {
      cur[i] += 1;
      if (cur[i] < m.factors[i]) break;
      cur[i] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

bool is_projective(const FinMod& m) {
  if (!m.ring.is_zmod()) return true;
  for (auto d : m.factors)
    if (std::gcd(d, m.ring.modulus / d) != 1) return false;
  return true;
}

} // namespace corat
