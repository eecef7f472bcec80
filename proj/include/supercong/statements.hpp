// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "supercong/error.hpp"

namespace supercong {

enum class StatementId : unsigned {
  T1_1,
  R1_4,
  T1_2,
  C1_3,
  R1_5,
  T1_3_6,
  T1_3_7,
  T1_3_8,
  R1_9,
  R1_10,
  L2_1a,
  L2_1b,
  L2_2,
  L2_3,
  L2_4a,
  L2_4b,
  L2_5,
  L2_6,
  L2_7,
  L2_8,
  L3_1a,
  L3_1b,
  E3_3,
  L3_2,
  R3_1a,
  R3_1b,
  A_SU3,
  A_T23,
  W_PAIR,
};

inline constexpr std::size_t kStatementCount = static_cast<std::size_t>(StatementId::W_PAIR) + 1;

/// Parameters of one congruence instance. Only the fields named in the
/// statement's signature are set.
struct Params {
  std::uint64_t p = 0;
  std::optional<std::int64_t> m, n, s, k, part;

  friend bool operator==(const Params&, const Params&) = default;

  std::string to_string() const {
    std::string out = "p=" + std::to_string(p);
    auto add = [&](const char* name, const std::optional<std::int64_t>& v) {
      if (v) out += std::string(",") + name + "=" + std::to_string(*v);
    };
    add("m", m);
    add("n", n);
    add("s", s);
    add("k", k);
    add("part", part);
    return out;
  }
};

namespace param {
inline constexpr unsigned p = 1, m = 2, n = 4, s = 8, k = 16, part = 32;
}

struct Statement {
  StatementId id;
  std::string_view name;
  unsigned signature;
  /// Plain-text statement of the congruence.
  std::string_view formula;
  bool (*applicable)(const Params&);
  /// Claimed valuation of LHS - RHS.
  unsigned (*claim)(const Params&);
};

namespace detail {

inline bool coprime_m(const Params& q) { return q.m && *q.m >= 1 && static_cast<std::uint64_t>(*q.m) % q.p != 0; }
inline bool n_in_half_range(const Params& q) {
  return q.n && *q.n >= 1 && 2 * static_cast<std::uint64_t>(*q.n) + 3 <= q.p;
}
inline bool p_above_2n_plus_1(const Params& q) {
  return q.n && *q.n >= 1 && q.p > 2 * static_cast<std::uint64_t>(*q.n) + 1;
}

}  // namespace detail

inline const std::array<Statement, kStatementCount>& catalog() {
  using namespace detail;
  static const std::array<Statement, kStatementCount> table{{
      {StatementId::T1_1, "T1_1", param::p, "sum_{k=0}^{p-1} C(-1/(p+1),k)^{p+1} == 0 (mod p^5)",
       [](const Params& q) { return q.p > 3; }, [](const Params&) { return 5u; }},
      {StatementId::R1_4, "R1_4", param::p, "sum_{k=0}^{p-1} C(-1/(p+1),k)^{p+1} == p^5 B_{p-3}/18 (mod p^6)",
       [](const Params& q) { return q.p > 5; }, [](const Params&) { return 6u; }},
      {StatementId::T1_2, "T1_2", param::p | param::m,
       "sum_{k=0}^{p-1} (-1)^{km} C(p/m-1,k)^m == 0 (mod p^4)",
       [](const Params& q) { return q.p > 3 && coprime_m(q); }, [](const Params&) { return 4u; }},
      {StatementId::C1_3, "C1_3", param::p, "sum_{k=0}^{p-1} C(1/(p-1),k)^{p-1} == 0 (mod p^4)",
       [](const Params& q) { return q.p > 3; }, [](const Params&) { return 4u; }},
      {StatementId::R1_5, "R1_5", param::p, "sum_{k=0}^{p-1} C(1/(p-1),k)^{p-1} == (2/3) p^4 B_{p-3} (mod p^5)",
       [](const Params& q) { return q.p > 3; }, [](const Params&) { return 5u; }},
      {StatementId::T1_3_6, "T1_3_6", param::p | param::m,
       "sum_{k=1}^{p-1} (-1)^{km} C(p/m-1,k)^m / k^2 == H_{p-1}/p (mod p^3)",
       [](const Params& q) { return q.p > 5 && coprime_m(q); }, [](const Params&) { return 3u; }},
      {StatementId::T1_3_7, "T1_3_7", param::p | param::m | param::n,
       "sum_{k=1}^{p-1} (-1)^{km} C(p/m-1,k)^m / k^{2n} == -p B_{p-1-2n}/(2n+1) (mod p^2)",
       [](const Params& q) { return q.p > 3 && coprime_m(q) && n_in_half_range(q); },
       [](const Params&) { return 2u; }},
      {StatementId::T1_3_8, "T1_3_8", param::p | param::m | param::n,
       "sum_{k=1}^{p-1} (-1)^{km} C(p/m-1,k)^m / k^{2n-1} == (1 + (1-m)(2n+1)/(2m)) p^2 n B_{p-1-2n}/(2n+1) "
       "(mod p^3)",
       [](const Params& q) { return q.p > 3 && coprime_m(q) && n_in_half_range(q); },
       [](const Params&) { return 3u; }},
      {StatementId::R1_9, "R1_9", param::p | param::n,
       "sum_{k=1}^{p-1} C(1/(p-1),k)^{p-1} / k^{2n-1} == -2 p^2 n^2 B_{p-1-2n}/(2n+1) (mod p^3)",
       [](const Params& q) { return p_above_2n_plus_1(q); }, [](const Params&) { return 3u; }},
      {StatementId::R1_10, "R1_10", param::p | param::n,
       "sum_{k=1}^{p-1} C(-1/(p+1),k)^{p+1} / k^{2n-1} == p^2 n B_{p-1-2n}/(2n+1) (mod p^3)",
       [](const Params& q) { return p_above_2n_plus_1(q); }, [](const Params&) { return 3u; }},
      {StatementId::L2_1a, "L2_1a", param::p, "H_{p-1} == -p^2 B_{p-3}/3 (mod p^3)",
       [](const Params& q) { return q.p > 3; }, [](const Params&) { return 3u; }},
      {StatementId::L2_1b, "L2_1b", param::p, "H_{p-1}^(2) == (2/3) p B_{p-3} (mod p^2)",
       [](const Params& q) { return q.p > 3; }, [](const Params&) { return 2u; }},
      {StatementId::L2_2, "L2_2", param::p | param::k,
       "e_k(1, 1/2, ..., 1/(p-1)) == (-1)^{k-1} p B_{p-1-k}/(k+1) (mod p^2)",
       [](const Params& q) { return q.p > 3 && q.k && *q.k >= 1 && static_cast<std::uint64_t>(*q.k) < q.p; },
       [](const Params&) { return 2u; }},
      {StatementId::L2_3, "L2_3", param::p, "sum_{k=1}^{p-1} H_k == -p^3 B_{p-3}/3 - p + 1 (mod p^4)",
       [](const Params& q) { return q.p > 3; }, [](const Params&) { return 4u; }},
      {StatementId::L2_4a, "L2_4a", param::p, "sum_{k=1}^{p-1} H_k^(2) == 0 (mod p^2)",
       [](const Params& q) { return q.p > 3; }, [](const Params&) { return 2u; }},
      {StatementId::L2_4b, "L2_4b", param::p, "sum_{k=1}^{p-1} H_k^(3) == 0 (mod p)",
       [](const Params& q) { return q.p > 3; }, [](const Params&) { return 1u; }},
      {StatementId::L2_5, "L2_5", param::p,
       "sum_{k=1}^{p-1} e_2(1..1/k) == -(2/3) p^2 B_{p-3} + p - 1 (mod p^3)",
       [](const Params& q) { return q.p > 3; }, [](const Params&) { return 3u; }},
      {StatementId::L2_6, "L2_6", param::p, "sum_{k=1}^{p-1} e_3(1..1/k) == -p B_{p-3}/3 - p + 1 (mod p^2)",
       [](const Params& q) { return q.p > 3; }, [](const Params&) { return 2u; }},
      {StatementId::L2_7, "L2_7", param::p, "sum_{k=1}^{p-1} e_4(1..1/k) == -1 (mod p)",
       [](const Params& q) { return q.p > 3; }, [](const Params&) { return 1u; }},
      {StatementId::L2_8, "L2_8", param::p,
       "sum_{k=1}^{p-1} sum_{i<j<=k} (1/(i j^2) + 1/(i^2 j)) == 0 (mod p)",
       [](const Params& q) { return q.p > 3; }, [](const Params&) { return 1u; }},
      {StatementId::L3_1a, "L3_1a", param::p | param::m | param::n,
       "sum_{k=1}^{p-1} H_k^(m) / k^{2n+1-m} == (-1)^{m-1} C(2n+1,m) B_{p-1-2n}/(2n+1) (mod p)",
       [](const Params& q) {
         return q.m && *q.m >= 1 && p_above_2n_plus_1(q) && *q.m <= 2 * *q.n + 1;
       },
       [](const Params&) { return 1u; }},
      {StatementId::L3_1b, "L3_1b", param::p | param::m | param::n,
       "sum_{k=1}^{p-1} H_k^(m) / k^{2n-m} == p B_{p-1-2n}/(2n+1) (n + (-1)^m (n-m) C(2n+1,m)/(m+1)) (mod p^2)",
       [](const Params& q) { return q.m && *q.m >= 1 && p_above_2n_plus_1(q) && *q.m < 2 * *q.n; },
       [](const Params&) { return 2u; }},
      {StatementId::E3_3, "E3_3", param::p | param::s, "sum_{k=1}^{p-1} 1/k^s == p s B_{p-1-s}/(s+1) (mod p^2)",
       [](const Params& q) { return q.p > 3 && q.s && *q.s >= 1 && static_cast<std::uint64_t>(*q.s) + 2 <= q.p; },
       [](const Params&) { return 2u; }},
      {StatementId::L3_2, "L3_2", param::p, "sum_{k=1}^{p-1} (1 - p H_k)/k^2 == H_{p-1}/p (mod p^3)",
       [](const Params& q) { return q.p > 5; }, [](const Params&) { return 3u; }},
      {StatementId::R3_1a, "R3_1a", param::p, "sum_{k=1}^{p-1} H_k/k^2 == B_{p-3} (mod p)",
       [](const Params& q) { return q.p > 3; }, [](const Params&) { return 1u; }},
      {StatementId::R3_1b, "R3_1b", param::p, "sum_{k=1}^{p-1} H_k/k^3 == -p B_{p-5}/10 (mod p^2)",
       [](const Params& q) { return q.p > 5; }, [](const Params&) { return 2u; }},
      {StatementId::A_SU3, "A_SU3", param::p, "sum_{k=1}^{p-1} H_k^2/k^2 == 0 (mod p)",
       [](const Params& q) { return q.p > 5; }, [](const Params&) { return 1u; }},
      {StatementId::A_T23, "A_T23", param::p, "sum_{1<=j<k<=p-1} 1/(j k^2) == -3 H_{p-1}/p^2 (mod p^2)",
       [](const Params& q) { return q.p > 5; }, [](const Params&) { return 2u; }},
      {StatementId::W_PAIR, "W_PAIR", param::p | param::part,
       "part 1: H_{p-1} == 0 (mod p^2); part 2: C(2p-1,p-1) == 1 (mod p^3)",
       [](const Params& q) { return q.p > 3 && q.part && (*q.part == 1 || *q.part == 2); },
       [](const Params& q) { return q.part && *q.part == 2 ? 3u : 2u; }},
  }};
  return table;
}

inline const Statement& statement(StatementId id) { return catalog()[static_cast<std::size_t>(id)]; }

inline std::optional<StatementId> parse_statement(std::string_view name) {
  for (const auto& s : catalog()) {
    if (s.name == name) return s.id;
  }
  return std::nullopt;
}

inline std::vector<StatementId> all_statements() {
  std::vector<StatementId> out;
  for (const auto& s : catalog()) out.push_back(s.id);
  return out;
}

/// How parameters beyond p are sampled for a given prime.
struct ParamPolicy {
  unsigned m_max = 12;
  unsigned n_max = 10;
  unsigned s_cap = 50;
  std::uint64_t s_cap_above = 53;

  friend bool operator==(const ParamPolicy&, const ParamPolicy&) = default;

  /// {1..m_max} without multiples of p, plus p - 1 and p + 1.
  std::vector<std::int64_t> m_values(std::uint64_t p) const {
    std::vector<std::int64_t> out;
    for (unsigned m = 1; m <= m_max; ++m) {
      if (m % p != 0) out.push_back(m);
    }
    out.push_back(static_cast<std::int64_t>(p - 1));
    out.push_back(static_cast<std::int64_t>(p + 1));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<std::int64_t> n_values(std::uint64_t p) const {
    std::vector<std::int64_t> out;
    if (p < 5) return out;
    const std::uint64_t top = std::min<std::uint64_t>(n_max, (p - 3) / 2);
    for (std::uint64_t n = 1; n <= top; ++n) out.push_back(static_cast<std::int64_t>(n));
    return out;
  }

  std::vector<std::int64_t> s_values(std::uint64_t p) const {
    std::vector<std::int64_t> out;
    if (p < 3) return out;
    std::uint64_t top = p - 2;
    if (p > s_cap_above) top = std::min<std::uint64_t>(top, s_cap);
    for (std::uint64_t s = 1; s <= top; ++s) out.push_back(static_cast<std::int64_t>(s));
    return out;
  }

  std::vector<Params> enumerate(StatementId id, std::uint64_t p) const {
    std::vector<Params> out;
    const Params base{p, {}, {}, {}, {}, {}};
    switch (id) {
      case StatementId::T1_2:
      case StatementId::T1_3_6:
        for (auto m : m_values(p)) {
          Params q = base;
          q.m = m;
          out.push_back(q);
        }
        break;
      case StatementId::T1_3_7:
      case StatementId::T1_3_8:
        for (auto m : m_values(p)) {
          for (auto n : n_values(p)) {
            Params q = base;
            q.m = m;
            q.n = n;
            out.push_back(q);
          }
        }
        break;
      case StatementId::R1_9:
      case StatementId::R1_10:
        for (auto n : n_values(p)) {
          Params q = base;
          q.n = n;
          out.push_back(q);
        }
        break;
      case StatementId::L2_2:
        for (std::uint64_t k = 1; k < p; ++k) {
          Params q = base;
          q.k = static_cast<std::int64_t>(k);
          out.push_back(q);
        }
        break;
      case StatementId::L3_1a:
      case StatementId::L3_1b:
        for (auto n : n_values(p)) {
          const std::int64_t top = id == StatementId::L3_1a ? 2 * n + 1 : 2 * n - 1;
          for (std::int64_t m = 1; m <= top; ++m) {
            Params q = base;
            q.m = m;
            q.n = n;
            out.push_back(q);
          }
        }
        break;
      case StatementId::E3_3:
        for (auto s : s_values(p)) {
          Params q = base;
          q.s = s;
          out.push_back(q);
        }
        break;
      case StatementId::W_PAIR:
        for (std::int64_t part : {1, 2}) {
          Params q = base;
          q.part = part;
          out.push_back(q);
        }
        break;
      default:
        out.push_back(base);
        break;
    }
    return out;
  }
};

}  // namespace supercong
