#include "kakeya/sweep.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "kakeya/errors.hpp"

namespace kakeya {

std::vector<Interval> slice_intervals(const ParallelogramUnion& u, const Rat& x) {
  std::vector<Interval> slices;
  for (const auto& m : u.members) {
    if (x < m.x0 || x > m.x1) continue;
    Rat b = m.bottom_at(x);
    slices.push_back({b, b + m.sideLength});
  }
  std::sort(slices.begin(), slices.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  });
  std::vector<Interval> merged;
  for (const auto& s : slices) {
    if (!merged.empty() && s.lo <= merged.back().hi)
      merged.back().hi = max(merged.back().hi, s.hi);
    else
      merged.push_back(s);
  }
  return merged;
}

namespace detail {

namespace {

struct Line {
  Rat m, c;  // y = m x + c
  Rat at(const Rat& x) const { return m * x + c; }
};

// merged slice length at x over the active members, clipped to [qLo, qHi]
// when a clip is present
Rat merged_length(const std::vector<std::size_t>& active,
                  const std::vector<Line>& bottoms, const std::vector<Rat>& sides,
                  const Line* qBottom, const Rat* qSide, const Rat& x) {
  std::vector<Interval> slices;
  slices.reserve(active.size());
  Rat qLo(0), qHi(0);
  if (qBottom) {
    qLo = qBottom->at(x);
    qHi = qLo + *qSide;
  }
  for (std::size_t i : active) {
    Rat lo = bottoms[i].at(x);
    Rat hi = lo + sides[i];
    if (qBottom) {
      lo = max(lo, qLo);
      hi = min(hi, qHi);
      if (!(lo < hi)) continue;
    }
    slices.push_back({lo, hi});
  }
  std::sort(slices.begin(), slices.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  });
  Rat total(0);
  std::optional<Interval> cur;
  for (const auto& s : slices) {
    if (cur && s.lo <= cur->hi) {
      cur->hi = max(cur->hi, s.hi);
    } else {
      if (cur) total += cur->length();
      cur = s;
    }
  }
  if (cur) total += cur->length();
  return total;
}

void add_crossing(std::vector<Rat>& events, const Line& a, const Line& b, const Rat& lo,
                  const Rat& hi) {
  if (a.m == b.m) return;
  Rat x = (b.c - a.c) / (a.m - b.m);
  if (lo < x && x < hi) events.push_back(x);
}

}  // namespace

Rat general_measure(const ParallelogramUnion& u, const VParallelogram* clip, const Rat& xLo,
                    const Rat& xHi) {
  Rat lo = xLo, hi = xHi;
  if (clip) {
    lo = max(lo, clip->x0);
    hi = min(hi, clip->x1);
  }
  if (!(lo < hi)) return Rat(0);

  const std::size_t n = u.members.size();
  std::vector<Line> bottoms(n);
  std::vector<Line> tops(n);
  std::vector<Rat> sides(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& m = u.members[i];
    bottoms[i] = {m.slope, m.yBottomLeft - m.slope * m.x0};
    tops[i] = {m.slope, bottoms[i].c + m.sideLength};
    sides[i] = m.sideLength;
  }
  Line qBottom;
  Rat qSide;
  if (clip) {
    qBottom = {clip->slope, clip->yBottomLeft - clip->slope * clip->x0};
    qSide = clip->sideLength;
  }

  std::vector<Rat> events{lo, hi};
  for (std::size_t i = 0; i < n; ++i) {
    if (lo < u.members[i].x0 && u.members[i].x0 < hi) events.push_back(u.members[i].x0);
    if (lo < u.members[i].x1 && u.members[i].x1 < hi) events.push_back(u.members[i].x1);
    for (std::size_t j = i + 1; j < n; ++j) {
      add_crossing(events, bottoms[i], bottoms[j], lo, hi);
      add_crossing(events, bottoms[i], tops[j], lo, hi);
      add_crossing(events, tops[i], bottoms[j], lo, hi);
      add_crossing(events, tops[i], tops[j], lo, hi);
    }
    if (clip) {
      Line qTop{qBottom.m, qBottom.c + qSide};
      add_crossing(events, bottoms[i], qBottom, lo, hi);
      add_crossing(events, bottoms[i], qTop, lo, hi);
      add_crossing(events, tops[i], qBottom, lo, hi);
      add_crossing(events, tops[i], qTop, lo, hi);
    }
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  Rat area(0);
  Rat half(1, 2);
  for (std::size_t e = 0; e + 1 < events.size(); ++e) {
    const Rat& a = events[e];
    const Rat& b = events[e + 1];
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n; ++i)
      if (u.members[i].x0 < b && u.members[i].x1 > a) active.push_back(i);
    if (active.empty()) continue;
    const Line* qb = clip ? &qBottom : nullptr;
    const Rat* qs = clip ? &qSide : nullptr;
    Rat la = merged_length(active, bottoms, sides, qb, qs, a);
    Rat lb = merged_length(active, bottoms, sides, qb, qs, b);
    Rat mid = (a + b) * half;
    Rat lm = merged_length(active, bottoms, sides, qb, qs, mid);
    if (lm + lm != la + lb)
      raise(Errc::VerificationFailure, "merged slice length not affine between events");
    area += (la + lb) * half * (b - a);
  }
  return area;
}

// ---------------------------------------------------------------------------
// Integer fast path. All coordinates scaled by 2^K must fit small int64
// bounds; event abscissae are then small fractions and every slice endpoint
// evaluated over a segment's common denominator fits __int128.
// ---------------------------------------------------------------------------

namespace {

using I128 = __int128;

struct Frac {
  std::int64_t num;
  std::int64_t den;  // > 0
};

bool frac_less(const Frac& a, const Frac& b) {
  return static_cast<I128>(a.num) * b.den < static_cast<I128>(b.num) * a.den;
}
bool frac_eq(const Frac& a, const Frac& b) {
  return static_cast<I128>(a.num) * b.den == static_cast<I128>(b.num) * a.den;
}

mpz_class mpz_from_i128(I128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  mpz_class z(static_cast<unsigned long>(u >> 64));
  mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), 64);
  z += static_cast<unsigned long>(u & 0xffffffffffffffffULL);
  return neg ? mpz_class(-z) : z;
}

constexpr std::int64_t kValueLimit = std::int64_t{1} << 20;   // scaled inputs
constexpr std::int64_t kFracNumLimit = std::int64_t{1} << 24; // reduced events
constexpr std::int64_t kFracDenLimit = std::int64_t{1} << 22;
constexpr std::size_t kMemberLimit = 256;
constexpr unsigned kExpLimit = 20;

struct ScaledMember {
  std::int64_t x0, x1;      // times 2^K
  std::int64_t slope, c0;   // bottom line: y*2^K = slope*x + c0 (x unscaled)
  std::int64_t side;
  bool activeFlag = false;
};

std::optional<Frac> reduced_frac(std::int64_t num, std::int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kFracNumLimit || num < -kFracNumLimit || den > kFracDenLimit) return std::nullopt;
  return Frac{num, den};
}

}  // namespace

std::optional<Rat> dyadic_measure(const ParallelogramUnion& u, const VParallelogram* clip,
                                  const Rat& xLo, const Rat& xHi) {
  if (u.members.size() > kMemberLimit) return std::nullopt;

  unsigned K = 0;
  auto exp_of = [&](const Rat& r) -> bool {
    unsigned e = 0;
    if (!r.is_dyadic(&e) || e > kExpLimit) return false;
    K = std::max(K, e);
    return true;
  };
  for (const auto& m : u.members)
    if (!exp_of(m.x0) || !exp_of(m.x1) || !exp_of(m.yBottomLeft) || !exp_of(m.slope) ||
        !exp_of(m.sideLength))
      return std::nullopt;
  if (clip &&
      (!exp_of(clip->x0) || !exp_of(clip->x1) || !exp_of(clip->yBottomLeft) ||
       !exp_of(clip->slope) || !exp_of(clip->sideLength)))
    return std::nullopt;
  if (!exp_of(xLo) || !exp_of(xHi)) return std::nullopt;

  auto scaled = [&](const Rat& r) -> std::optional<std::int64_t> {
    auto v = r.scaled_int64(K);
    if (!v || *v > kValueLimit || *v < -kValueLimit) return std::nullopt;
    return v;
  };
  auto scale_member = [&](const VParallelogram& m) -> std::optional<ScaledMember> {
    auto x0 = scaled(m.x0), x1 = scaled(m.x1), y = scaled(m.yBottomLeft), s = scaled(m.slope),
         side = scaled(m.sideLength);
    if (!x0 || !x1 || !y || !s || !side) return std::nullopt;
    // bottom at rational x: y' + s'*(x - x0'/2^K) = s'*x + c0 with
    // c0 = y' - s'*x0'/2^K; the intercept must stay an exact integer
    I128 prod = static_cast<I128>(*s) * *x0;
    if (prod % (I128{1} << K) != 0) return std::nullopt;
    I128 c0w = static_cast<I128>(*y) - prod / (I128{1} << K);
    if (c0w > kValueLimit * 2 || c0w < -kValueLimit * 2) return std::nullopt;
    return ScaledMember{*x0, *x1, *s, static_cast<std::int64_t>(c0w), *side};
  };

  std::vector<ScaledMember> ms;
  ms.reserve(u.members.size());
  for (const auto& m : u.members) {
    auto sm = scale_member(m);
    if (!sm) return std::nullopt;
    ms.push_back(*sm);
  }
  std::optional<ScaledMember> qm;
  if (clip) {
    qm = scale_member(*clip);
    if (!qm) return std::nullopt;
  }
  auto loS = scaled(xLo), hiS = scaled(xHi);
  if (!loS || !hiS) return std::nullopt;

  std::int64_t winLoN = *loS, winHiN = *hiS;  // numerators over den 2^K
  if (qm) {
    winLoN = std::max(winLoN, qm->x0);
    winHiN = std::min(winHiN, qm->x1);
  }
  if (winLoN >= winHiN) return Rat(0);
  const std::int64_t den2K = std::int64_t{1} << K;

  auto lo = Frac{winLoN, den2K};
  auto hi = Frac{winHiN, den2K};

  std::vector<Frac> events{lo, hi};
  auto add_cross = [&](std::int64_t m1, std::int64_t c1, std::int64_t m2, std::int64_t c2) -> bool {
    if (m1 == m2) return true;
    auto f = reduced_frac(c2 - c1, m1 - m2);
    if (!f) return false;
    if (frac_less(lo, *f) && frac_less(*f, hi)) events.push_back(*f);
    return true;
  };
  auto add_member_crossings = [&](const ScaledMember& a, const ScaledMember& b) -> bool {
    return add_cross(a.slope, a.c0, b.slope, b.c0) &&
           add_cross(a.slope, a.c0, b.slope, b.c0 + b.side) &&
           add_cross(a.slope, a.c0 + a.side, b.slope, b.c0) &&
           add_cross(a.slope, a.c0 + a.side, b.slope, b.c0 + b.side);
  };
  for (std::size_t i = 0; i < ms.size(); ++i) {
    auto bx0 = Frac{ms[i].x0, den2K};
    auto bx1 = Frac{ms[i].x1, den2K};
    if (frac_less(lo, bx0) && frac_less(bx0, hi)) events.push_back(bx0);
    if (frac_less(lo, bx1) && frac_less(bx1, hi)) events.push_back(bx1);
    for (std::size_t j = i + 1; j < ms.size(); ++j)
      if (!add_member_crossings(ms[i], ms[j])) return std::nullopt;
    if (qm && !add_member_crossings(ms[i], *qm)) return std::nullopt;
  }
  std::sort(events.begin(), events.end(), frac_less);
  events.erase(std::unique(events.begin(), events.end(), frac_eq), events.end());

  // merged slice length at common-denominator abscissa p/q, scaled by 2^K*q
  std::vector<std::pair<I128, I128>> slices;
  auto merged_scaled = [&](I128 p, I128 q) -> I128 {
    slices.clear();
    I128 qLo = 0, qHi = 0;
    if (qm) {
      qLo = static_cast<I128>(qm->slope) * p + static_cast<I128>(qm->c0) * q;
      qHi = qLo + static_cast<I128>(qm->side) * q;
    }
    for (const auto& m : ms) {
      if (!m.activeFlag) continue;
      I128 b = static_cast<I128>(m.slope) * p + static_cast<I128>(m.c0) * q;
      I128 t = b + static_cast<I128>(m.side) * q;
      if (qm) {
        b = std::max(b, qLo);
        t = std::min(t, qHi);
        if (b >= t) continue;
      }
      slices.emplace_back(b, t);
    }
    std::sort(slices.begin(), slices.end());
    I128 total = 0, curLo = 0, curHi = 0;
    bool open = false;
    for (const auto& s : slices) {
      if (open && s.first <= curHi) {
        curHi = std::max(curHi, s.second);
      } else {
        if (open) total += curHi - curLo;
        curLo = s.first;
        curHi = s.second;
        open = true;
      }
    }
    if (open) total += curHi - curLo;
    return total;
  };

  Rat area(0);
  for (std::size_t e = 0; e + 1 < events.size(); ++e) {
    Frac a = events[e], b = events[e + 1];
    bool any = false;
    for (auto& m : ms) {
      // active iff [x0,x1] overlaps the open segment (a,b)
      bool act = static_cast<I128>(m.x0) * b.den < static_cast<I128>(b.num) * den2K &&
                 static_cast<I128>(m.x1) * a.den > static_cast<I128>(a.num) * den2K;
      m.activeFlag = act;
      any = any || act;
    }
    if (!any) continue;
    // evaluate at a, b and the midpoint over the common denominator 2*qa*qb
    I128 q = I128{2} * a.den * b.den;
    I128 pa = I128{2} * a.num * b.den;
    I128 pb = I128{2} * b.num * a.den;
    I128 pm = static_cast<I128>(a.num) * b.den + static_cast<I128>(b.num) * a.den;
    I128 la = merged_scaled(pa, q);
    I128 lb = merged_scaled(pb, q);
    I128 lm = merged_scaled(pm, q);
    if (lm * 2 != la + lb)
      raise(Errc::VerificationFailure, "merged slice length not affine between events");
    // segment area = (la+lb)/(2*2^K*q) * (pb-pa)/q
    mpz_class num = mpz_from_i128(la + lb) * mpz_from_i128(pb - pa);
    mpz_class den = mpz_from_i128(q) * mpz_from_i128(q) * 2;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), K);
    area += Rat(num, den);
  }
  return area;
}

}  // namespace detail

namespace {

Rat measure_impl(const ParallelogramUnion& u, const VParallelogram* clip, const Rat& xLo,
                 const Rat& xHi) {
  if (u.members.empty()) raise(Errc::EmptySet, "measure of empty union");
  if (!(xLo < xHi)) raise(Errc::InvalidInput, "measure window needs xLo < xHi");
  if (auto fast = detail::dyadic_measure(u, clip, xLo, xHi)) return *fast;
  return detail::general_measure(u, clip, xLo, xHi);
}

}  // namespace

Rat union_measure(const ParallelogramUnion& u, const Rat& xLo, const Rat& xHi) {
  return measure_impl(u, nullptr, xLo, xHi);
}

Rat union_measure_in(const ParallelogramUnion& u, const VParallelogram& q, const Rat& xLo,
                     const Rat& xHi) {
  return measure_impl(u, &q, xLo, xHi);
}

}  // namespace kakeya
