#pragma once

#include <cstdint>
#include <functional>
#include <map>

#include "authcap/rng.hpp"
#include "authcap/types.hpp"

namespace authcap {

// Channel with exact rational entries, for enumeration results that must be
// exact rationals rather than floats.
struct RationalKernel {
  int in_size = 0, out_size = 0;
  std::vector<Rational> cells;  // row-major, in x out

  RationalKernel() = default;
  RationalKernel(int in_sz, int out_sz, std::vector<Rational> c)
      : in_size(in_sz), out_size(out_sz), cells(std::move(c)) {
    if (cells.size() != static_cast<std::size_t>(in_size) * out_size)
      throw std::invalid_argument("RationalKernel: bad dimensions");
    for (int x = 0; x < in_size; ++x) {
      Rational s = 0;
      for (int y = 0; y < out_size; ++y) {
        if (cells[x * out_size + y] < 0)
          throw std::invalid_argument("RationalKernel: negative entry");
        s += cells[x * out_size + y];
      }
      if (s != 1) throw std::invalid_argument("RationalKernel: row does not sum to 1");
    }
  }

  const Rational& operator()(int out, int in) const { return cells[in * out_size + out]; }

  static RationalKernel bsc(const Rational& lambda) {
    return RationalKernel(2, 2, {1 - lambda, lambda, lambda, 1 - lambda});
  }
  static RationalKernel identity(int k) {
    std::vector<Rational> c(static_cast<std::size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i) c[i * k + i] = 1;
    return RationalKernel(k, k, std::move(c));
  }

  CondDist to_cond_dist() const {
    std::vector<double> flat(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) flat[i] = cells[i].convert_to<double>();
    return CondDist(in_size, out_size, std::move(flat));
  }

  Rational seq_prob(const Seq& y, const Seq& x) const {
    Rational p = 1;
    for (std::size_t i = 0; i < y.size(); ++i) {
      p *= (*this)(y[i], x[i]);
      if (p == 0) return p;
    }
    return p;
  }
};

// Layered random code: a public layer w per outer message, an inner layer u
// drawn from the conditional class of sigma given w per (outer, inner, key)
// triple, and a stochastic encoder uniform over the class of rho given u.
struct TypeClassParams {
  int n = 0;
  std::uint64_t m_hat_count = 1, m_tilde_count = 1, key_count = 1;
  NType tau;        // W-type
  CondNType sigma;  // U|W, one-to-one over conditioning
  CondNType rho;    // X|U

  std::uint64_t message_count() const { return m_hat_count * m_tilde_count; }
};

struct TypeClassCode {
  TypeClassParams params;
  std::vector<Seq> w;  // per outer message
  std::vector<Seq> u;  // per (outer, inner, key), flattened
  // encoder support per (outer, inner, key): indices of the sequences in
  // T_rho(u), each chosen with equal probability
  std::vector<std::vector<std::uint64_t>> support;

  std::uint64_t tuple_index(std::uint64_t m_hat, std::uint64_t m_tilde,
                            std::uint64_t k) const {
    return (m_hat * params.m_tilde_count + m_tilde) * params.key_count + k;
  }
  int x_alphabet() const { return params.rho.out_size; }
};

inline TypeClassCode build_typeclass_code(const TypeClassParams& params,
                                          std::uint64_t seed) {
  if (!params.sigma.deterministic_over_conditioning())
    throw std::invalid_argument("build_typeclass_code: sigma lacks the one-to-one property");
  if (!(params.sigma.conditioning() == params.tau))
    throw std::invalid_argument("build_typeclass_code: sigma/tau mismatch");
  const NType u_counts(params.sigma.n, params.sigma.output_counts());
  if (!(params.rho.conditioning() == u_counts))
    throw std::invalid_argument("build_typeclass_code: rho/sigma mismatch");

  TypeClassCode code{params, {}, {}, {}};
  auto g = stream(seed, "typeclass/build");

  const std::vector<Seq> w_class = sequences_of_type(params.tau);
  if (w_class.empty()) throw std::invalid_argument("build_typeclass_code: empty w class");
  code.w.reserve(params.m_hat_count);
  for (std::uint64_t i = 0; i < params.m_hat_count; ++i)
    code.w.push_back(w_class[uniform_below(g, w_class.size())]);

  std::map<Seq, std::vector<Seq>> u_class_cache;
  code.u.reserve(params.message_count() * params.key_count);
  for (std::uint64_t mh = 0; mh < params.m_hat_count; ++mh) {
    auto it = u_class_cache.find(code.w[mh]);
    if (it == u_class_cache.end())
      it = u_class_cache.emplace(code.w[mh],
                                 sequences_of_cond_type(params.sigma, code.w[mh])).first;
    const auto& cls = it->second;
    if (cls.empty()) throw std::invalid_argument("build_typeclass_code: empty u class");
    for (std::uint64_t mt = 0; mt < params.m_tilde_count; ++mt)
      for (std::uint64_t k = 0; k < params.key_count; ++k)
        code.u.push_back(cls[uniform_below(g, cls.size())]);
  }

  std::map<Seq, std::vector<std::uint64_t>> x_class_cache;
  code.support.reserve(code.u.size());
  for (const Seq& useq : code.u) {
    auto it = x_class_cache.find(useq);
    if (it == x_class_cache.end()) {
      std::vector<std::uint64_t> idx;
      for (const Seq& x : sequences_of_cond_type(params.rho, useq))
        idx.push_back(seq_to_index(x, params.rho.out_size));
      if (idx.empty())
        throw std::invalid_argument("build_typeclass_code: empty encoder class");
      it = x_class_cache.emplace(useq, std::move(idx)).first;
    }
    code.support.push_back(it->second);
  }
  return code;
}

// Maximum-likelihood decode over every (outer, inner, key) triple; the unique
// maximizer is accepted only when its key coordinate equals the receiver's
// key, otherwise the intrusion mark (-1) is returned. Ties also return -1.
inline long long decode(const TypeClassCode& code, const RationalKernel& t,
                        const Seq& y, std::uint64_t k) {
  Rational best = -1;
  std::uint64_t best_tuple = 0;
  bool tie = false;
  const std::uint64_t m_count = code.params.message_count();
  for (std::uint64_t m = 0; m < m_count; ++m)
    for (std::uint64_t l = 0; l < code.params.key_count; ++l) {
      const auto& supp = code.support[m * code.params.key_count + l];
      Rational score = 0;
      for (std::uint64_t xi : supp)
        score += t.seq_prob(y, index_to_seq(xi, code.params.n, code.x_alphabet()));
      score /= Rational(static_cast<BigInt>(supp.size()));
      if (score > best) {
        best = score;
        best_tuple = m * code.params.key_count + l;
        tie = false;
      } else if (score == best) {
        tie = true;
      }
    }
  if (tie || best_tuple % code.params.key_count != k) return -1;
  return static_cast<long long>(best_tuple / code.params.key_count);
}

// A code reduced to what the operational evaluators need: the uniform encoder
// support and a (possibly round-dependent) deterministic decoder.
struct CodeView {
  int n = 0;
  int x_alphabet = 2;
  int y_alphabet = 2;  // receiver-side alphabet, fixes the decoder's domain
  std::uint64_t message_count = 1, key_count = 1;
  int rounds = 1;
  std::function<std::vector<std::uint64_t>(int round, std::uint64_t m, std::uint64_t k)>
      support;
  std::function<long long(int round, std::uint64_t y_index, std::uint64_t k)> decode;
};

inline CodeView make_view(const TypeClassCode& code, const RationalKernel& t,
                          int rounds) {
  const std::uint64_t y_space = [&] {
    std::uint64_t s = 1;
    for (int i = 0; i < code.params.n; ++i) s *= t.out_size;
    return s;
  }();
  auto table = std::make_shared<std::vector<long long>>();
  table->reserve(y_space * code.params.key_count);
  for (std::uint64_t yi = 0; yi < y_space; ++yi) {
    const Seq y = index_to_seq(yi, code.params.n, t.out_size);
    for (std::uint64_t k = 0; k < code.params.key_count; ++k)
      table->push_back(decode(code, t, y, k));
  }
  auto code_ptr = std::make_shared<TypeClassCode>(code);
  CodeView view;
  view.n = code.params.n;
  view.x_alphabet = code.x_alphabet();
  view.y_alphabet = t.out_size;
  view.message_count = code.params.message_count();
  view.key_count = code.params.key_count;
  view.rounds = rounds;
  view.support = [code_ptr](int, std::uint64_t m, std::uint64_t k) {
    return code_ptr->support[m * code_ptr->params.key_count + k];
  };
  const std::uint64_t kc = code.params.key_count;
  view.decode = [table, kc](int, std::uint64_t yi, std::uint64_t k) {
    return (*table)[yi * kc + k];
  };
  return view;
}

// Per-key-and-round injective remappings of a shrunken message set into the
// base code's message set.
struct RemappedCode {
  std::uint64_t m_tilde_count = 1;
  std::uint64_t k2_count = 1;
  int rounds = 1;
  // g[k2][round] is an injective map, listed as distinct base-message indices
  std::vector<std::vector<std::vector<std::uint64_t>>> g;
};

inline RemappedCode remap_transform(std::uint64_t base_message_count,
                                    std::uint64_t m_tilde_count,
                                    std::uint64_t k2_count, int rounds,
                                    std::uint64_t seed) {
  if (m_tilde_count > base_message_count)
    throw std::invalid_argument("remap_transform: shrunken message set too large");
  RemappedCode rm{m_tilde_count, k2_count, rounds, {}};
  auto g = stream(seed, "remap/maps");
  rm.g.resize(k2_count);
  for (std::uint64_t k2 = 0; k2 < k2_count; ++k2) {
    rm.g[k2].resize(rounds);
    for (int i = 0; i < rounds; ++i)
      rm.g[k2][i] = sample_distinct(g, base_message_count, m_tilde_count);
  }
  return rm;
}

// Composite key (k1, k2) flattened as k1 * |K2| + k2. Base decodes landing
// outside the image of the round's remapping fold into the intrusion mark.
inline CodeView remapped_view(const CodeView& base, const RemappedCode& rm) {
  auto maps = std::make_shared<RemappedCode>(rm);
  CodeView view;
  view.n = base.n;
  view.x_alphabet = base.x_alphabet;
  view.y_alphabet = base.y_alphabet;
  view.message_count = rm.m_tilde_count;
  view.key_count = base.key_count * rm.k2_count;
  view.rounds = rm.rounds;
  auto base_support = base.support;
  auto base_decode = base.decode;
  const std::uint64_t k2c = rm.k2_count;
  view.support = [maps, base_support, k2c](int round, std::uint64_t m, std::uint64_t k) {
    return base_support(round, maps->g[k % k2c][round][m], k / k2c);
  };
  view.decode = [maps, base_decode, k2c](int round, std::uint64_t yi, std::uint64_t k) {
    const long long m = base_decode(round, yi, k / k2c);
    if (m < 0) return static_cast<long long>(-1);
    const auto& map = maps->g[k % k2c][round];
    for (std::size_t i = 0; i < map.size(); ++i)
      if (map[i] == static_cast<std::uint64_t>(m)) return static_cast<long long>(i);
    return static_cast<long long>(-1);
  };
  return view;
}

}  // namespace authcap
