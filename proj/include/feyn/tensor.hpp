#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "feyn/error.hpp"

namespace feyn {

// Dense tensor with every index ranging over [0, dim); row-major storage,
// the first index varies slowest.
template <class T>
struct Tensor {
  int dim = 1;
  int rank = 0;
  std::vector<T> data;

  Tensor() : data(1, T(1)) {}
  Tensor(int d, int r, const T& fill = T(0)) : dim(d), rank(r) {
    std::size_t n = 1;
    for (int i = 0; i < r; ++i) n *= static_cast<std::size_t>(d);
    data.assign(n, fill);
  }

  std::size_t offset(const std::vector<int>& idx) const {
    std::size_t o = 0;
    for (int i : idx) o = o * dim + i;
    return o;
  }
  T& operator()(const std::vector<int>& idx) { return data[offset(idx)]; }
  const T& operator()(const std::vector<int>& idx) const { return data[offset(idx)]; }
};

// Steps a multi-index through [0, dim)^n; returns false after the last one.
inline bool next_index(std::vector<int>& idx, int dim) {
  for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
    if (++idx[i] < dim) return true;
    idx[i] = 0;
  }
  return false;
}

template <class T>
struct Factor {
  Tensor<T> tensor;
  std::vector<int> vars;  // one variable per index of tensor
};

namespace detail {

// Generalised pairwise contraction: variables in keep survive (once), all
// others shared by a and b are summed.
template <class T>
Factor<T> contract_pair(const Factor<T>& a, const Factor<T>& b, const std::vector<int>& keep,
                        int dim) {
  std::vector<int> all;
  for (int v : a.vars)
    if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
  for (int v : b.vars)
    if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
  std::vector<int> out_vars;
  for (int v : all)
    if (std::find(keep.begin(), keep.end(), v) != keep.end()) out_vars.push_back(v);
  const int n = static_cast<int>(all.size());

  auto strides_for = [&](const std::vector<int>& vars) {
    std::vector<std::size_t> s(n, 0);
    std::size_t st = 1;
    for (int i = static_cast<int>(vars.size()) - 1; i >= 0; --i) {
      const int pos = static_cast<int>(std::find(all.begin(), all.end(), vars[i]) - all.begin());
      s[pos] += st;
      st *= dim;
    }
    return s;
  };
  const auto sa = strides_for(a.vars);
  const auto sb = strides_for(b.vars);
  const auto so = strides_for(out_vars);

  Factor<T> out{Tensor<T>(dim, static_cast<int>(out_vars.size())), out_vars};
  std::vector<int> idx(n, 0);
  std::size_t oa = 0, ob = 0, oo = 0;
  while (true) {
    out.tensor.data[oo] += a.tensor.data[oa] * b.tensor.data[ob];
    int i = n - 1;
    for (; i >= 0; --i) {
      if (++idx[i] < dim) {
        oa += sa[i];
        ob += sb[i];
        oo += so[i];
        break;
      }
      oa -= sa[i] * (dim - 1);
      ob -= sb[i] * (dim - 1);
      oo -= so[i] * (dim - 1);
      idx[i] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

template <class T>
Factor<T> reduce_single(const Factor<T>& a, const std::vector<int>& keep, int dim) {
  Factor<T> unit{Tensor<T>(dim, 0, T(1)), {}};
  return contract_pair(a, unit, keep, dim);
}

}  // namespace detail

// Contracts a network of factors; every variable not listed in output is
// summed. Pairs sharing a variable are contracted greedily, cheapest first.
// The result carries the output variables in the given order.
template <class T>
Tensor<T> contract_network(std::vector<Factor<T>> factors, const std::vector<int>& output,
                           int dim) {
  auto needed_by_others = [&](std::size_t i, std::size_t j) {
    std::vector<int> keep(output);
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k == i || k == j) continue;
      keep.insert(keep.end(), factors[k].vars.begin(), factors[k].vars.end());
    }
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    return keep;
  };

  if (factors.empty()) factors.push_back({Tensor<T>(dim, 0, T(1)), {}});
  while (factors.size() > 1) {
    std::size_t best_i = 0, best_j = 1;
    long best_cost = -1;
    bool best_shares = false;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      for (std::size_t j = i + 1; j < factors.size(); ++j) {
        std::vector<int> u(factors[i].vars);
        u.insert(u.end(), factors[j].vars.begin(), factors[j].vars.end());
        std::sort(u.begin(), u.end());
        const bool shares = std::adjacent_find(u.begin(), u.end()) != u.end();
        u.erase(std::unique(u.begin(), u.end()), u.end());
        const long cost = static_cast<long>(u.size());
        if (best_cost < 0 || (shares && !best_shares) ||
            (shares == best_shares && cost < best_cost)) {
          best_cost = cost;
          best_shares = shares;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best_cost > 24) fail(ErrorCode::limit, "tensor contraction too large");
    Factor<T> merged = detail::contract_pair(factors[best_i], factors[best_j],
                                             needed_by_others(best_i, best_j), dim);
    factors.erase(factors.begin() + static_cast<long>(best_j));
    factors[best_i] = std::move(merged);
  }
  Factor<T> last = detail::reduce_single(factors[0], output, dim);
  // Permute to the requested output order.
  Tensor<T> result(dim, static_cast<int>(output.size()));
  std::vector<int> pos(output.size());
  for (std::size_t k = 0; k < output.size(); ++k) {
    auto it = std::find(last.vars.begin(), last.vars.end(), output[k]);
    if (it == last.vars.end()) fail(ErrorCode::invalid_argument, "output variable not in network");
    pos[k] = static_cast<int>(it - last.vars.begin());
  }
  if (last.vars.size() != output.size())
    fail(ErrorCode::invalid_argument, "repeated output variable");
  std::vector<int> idx(output.size(), 0), src(output.size(), 0);
  do {
    for (std::size_t k = 0; k < output.size(); ++k) src[pos[k]] = idx[k];
    result(idx) = last.tensor(src);
  } while (next_index(idx, dim));
  return result;
}

}  // namespace feyn
