//------------------------------------------------------------------------------
//
//   Copyright 2026 The tenlog Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "tenlog/einsum.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include <omp.h>

#include "tenlog/error.hpp"

namespace tenlog {

EinsumSpec EinsumSpec::parse(std::string_view text) {
  EinsumSpec spec;
  auto arrow = text.find("->");
  if (arrow == std::string_view::npos) throw ShapeError("einsum spec needs '->': " + std::string(text));
  std::string_view lhs = text.substr(0, arrow);
  std::string_view rhs = text.substr(arrow + 2);
  std::vector<std::string> cur;
  bool any = false;
  for (char c : lhs) {
    if (c == ',') {
      spec.inputs.push_back(std::move(cur));
      cur.clear();
      any = true;
    } else if (c != ' ') {
      cur.emplace_back(1, c);
      any = true;
    }
  }
  if (any || !cur.empty()) spec.inputs.push_back(std::move(cur));
  for (char c : rhs) {
    if (c != ' ') spec.output.emplace_back(1, c);
  }
  return spec;
}

std::string EinsumSpec::str(const std::map<std::string, char>& letters) const {
  auto write = [&](const std::vector<std::string>& labels) {
    std::string s;
    for (const auto& l : labels) s += letters.at(l);
    return s;
  };
  std::string out;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (k) out += ',';
    out += write(inputs[k]);
  }
  return out + "->" + write(output);
}

std::string EinsumSpec::str() const {
  auto write = [](const std::vector<std::string>& labels) {
    std::string s;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i) s += '.';
      s += labels[i];
    }
    return s;
  };
  std::string out;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (k) out += ',';
    out += write(inputs[k]);
  }
  return out + "->" + write(output);
}

namespace {

// One contraction of n operands into an output, over integer labels.
struct Plan {
  std::vector<std::size_t> out_dims;
  std::vector<std::size_t> sum_dims;
  std::vector<std::vector<std::size_t>> out_strides;  // [operand][out axis]
  std::vector<std::vector<std::size_t>> sum_strides;  // [operand][sum axis]
};

using Labels = std::vector<int>;

Plan make_plan(const std::vector<Labels>& in_labels, const std::vector<const DenseTensor*>& ops,
               const Labels& out_labels, const std::map<int, std::size_t>& sizes) {
  Plan p;
  std::vector<int> sum_labels;
  std::set<int> out_set(out_labels.begin(), out_labels.end());
  std::set<int> seen;
  for (const auto& ls : in_labels) {
    for (int l : ls) {
      if (!out_set.count(l) && seen.insert(l).second) sum_labels.push_back(l);
    }
  }
  for (int l : out_labels) p.out_dims.push_back(sizes.at(l));
  for (int l : sum_labels) p.sum_dims.push_back(sizes.at(l));

  const std::size_t n = ops.size();
  p.out_strides.assign(n, std::vector<std::size_t>(out_labels.size(), 0));
  p.sum_strides.assign(n, std::vector<std::size_t>(sum_labels.size(), 0));
  for (std::size_t k = 0; k < n; ++k) {
    const auto& shape = ops[k]->shape();
    std::vector<std::size_t> strides(shape.size(), 1);
    for (std::size_t a = shape.size(); a-- > 1;) strides[a - 1] = strides[a] * shape[a];
    for (std::size_t a = 0; a < in_labels[k].size(); ++a) {
      int l = in_labels[k][a];
      // Repeated labels add their strides: that walks the diagonal.
      if (auto it = std::find(out_labels.begin(), out_labels.end(), l); it != out_labels.end()) {
        p.out_strides[k][static_cast<std::size_t>(it - out_labels.begin())] += strides[a];
      } else {
        auto jt = std::find(sum_labels.begin(), sum_labels.end(), l);
        p.sum_strides[k][static_cast<std::size_t>(jt - sum_labels.begin())] += strides[a];
      }
    }
  }
  return p;
}

DenseTensor run_plan(const Plan& p, const std::vector<const DenseTensor*>& ops, Execution exec) {
  DenseTensor out(p.out_dims);
  const std::size_t n = ops.size();
  const std::size_t nout = p.out_dims.size();
  const std::size_t nsum = p.sum_dims.size();
  const std::size_t out_size = out.size();
  const std::size_t sum_size = element_count(p.sum_dims);
  // The last summed axis runs as a tight loop; the others use an odometer.
  const std::size_t inner = nsum ? p.sum_dims[nsum - 1] : 1;
  const std::size_t outer = nsum ? sum_size / inner : 1;
  std::vector<std::size_t> inner_stride(n, 0);
  if (nsum) {
    for (std::size_t k = 0; k < n; ++k) inner_stride[k] = p.sum_strides[k][nsum - 1];
  }
  std::vector<const double*> in(n);
  for (std::size_t k = 0; k < n; ++k) in[k] = ops[k]->data().data();
  double* dst = out.data().data();
  const bool parallel = exec == Execution::Parallel && out_size > 1 && out_size * sum_size >= 8192;

#pragma omp parallel if (parallel)
  {
    const auto t = static_cast<std::size_t>(omp_get_thread_num());
    const auto nt = static_cast<std::size_t>(omp_get_num_threads());
    const std::size_t begin = out_size * t / nt;
    const std::size_t end = out_size * (t + 1) / nt;
    std::vector<std::size_t> idx(nout), base(n, 0), off(n), cnt(nsum ? nsum - 1 : 0);
    std::size_t rem = begin;
    for (std::size_t a = nout; a-- > 0;) {
      idx[a] = rem % p.out_dims[a];
      rem /= p.out_dims[a];
      for (std::size_t k = 0; k < n; ++k) base[k] += idx[a] * p.out_strides[k][a];
    }
    for (std::size_t o = begin; o < end; ++o) {
      double acc = 0.0;
      if (nsum == 0) {
        acc = in[0][base[0]];
        for (std::size_t k = 1; k < n; ++k) acc *= in[k][base[k]];
      } else {
        off = base;
        std::fill(cnt.begin(), cnt.end(), 0);
        for (std::size_t s = 0; s < outer; ++s) {
          if (n == 1) {
            const double* a = in[0] + off[0];
            const std::size_t sa = inner_stride[0];
            for (std::size_t j = 0; j < inner; ++j) acc += a[j * sa];
          } else if (n == 2) {
            const double* a = in[0] + off[0];
            const double* b = in[1] + off[1];
            const std::size_t sa = inner_stride[0], sb = inner_stride[1];
            for (std::size_t j = 0; j < inner; ++j) acc += a[j * sa] * b[j * sb];
          } else {
            for (std::size_t j = 0; j < inner; ++j) {
              double prod = in[0][off[0] + j * inner_stride[0]];
              for (std::size_t k = 1; k < n; ++k) prod *= in[k][off[k] + j * inner_stride[k]];
              acc += prod;
            }
          }
          for (std::size_t d = nsum - 1; d-- > 0;) {
            for (std::size_t k = 0; k < n; ++k) off[k] += p.sum_strides[k][d];
            if (++cnt[d] < p.sum_dims[d]) break;
            for (std::size_t k = 0; k < n; ++k) off[k] -= p.sum_strides[k][d] * p.sum_dims[d];
            cnt[d] = 0;
          }
        }
      }
      dst[o] = acc;
      for (std::size_t a = nout; a-- > 0;) {
        for (std::size_t k = 0; k < n; ++k) base[k] += p.out_strides[k][a];
        if (++idx[a] < p.out_dims[a]) break;
        for (std::size_t k = 0; k < n; ++k) base[k] -= p.out_strides[k][a] * p.out_dims[a];
        idx[a] = 0;
      }
    }
  }
  return out;
}

}  // namespace

DenseTensor einsum(const EinsumSpec& spec, const std::vector<const DenseTensor*>& operands, Execution exec) {
  return einsum(spec, operands, {}, exec);
}

DenseTensor einsum(const EinsumSpec& spec, const std::vector<const DenseTensor*>& operands,
                   const std::map<std::string, std::size_t>& extra_sizes, Execution exec) {
  if (spec.inputs.size() != operands.size()) {
    throw ShapeError("einsum " + spec.str() + " expects " + std::to_string(spec.inputs.size()) +
                     " operands, got " + std::to_string(operands.size()));
  }
  std::map<std::string, int> ids;
  std::map<int, std::size_t> sizes;
  auto id_of = [&](const std::string& l) {
    auto [it, inserted] = ids.try_emplace(l, static_cast<int>(ids.size()));
    return it->second;
  };
  std::vector<Labels> in_labels(operands.size());
  for (std::size_t k = 0; k < operands.size(); ++k) {
    const auto& shape = operands[k]->shape();
    if (shape.size() != spec.inputs[k].size()) {
      throw ShapeError("einsum " + spec.str() + ": operand " + std::to_string(k) + " has shape " + shape_str(shape) +
                       " but " + std::to_string(spec.inputs[k].size()) + " labels");
    }
    for (std::size_t a = 0; a < shape.size(); ++a) {
      int l = id_of(spec.inputs[k][a]);
      in_labels[k].push_back(l);
      auto [it, inserted] = sizes.try_emplace(l, shape[a]);
      if (!inserted && it->second != shape[a]) {
        throw ShapeError("einsum " + spec.str() + ": label " + spec.inputs[k][a] + " has sizes " +
                         std::to_string(it->second) + " and " + std::to_string(shape[a]));
      }
    }
  }
  Labels out_labels;
  std::set<int> out_seen;
  for (const auto& l : spec.output) {
    int id = id_of(l);
    if (!out_seen.insert(id).second) throw ShapeError("einsum " + spec.str() + ": repeated output label " + l);
    if (!sizes.count(id)) {
      auto it = extra_sizes.find(l);
      if (it == extra_sizes.end()) throw ShapeError("einsum " + spec.str() + ": output label " + l + " has no size");
      sizes.emplace(id, it->second);
    }
    out_labels.push_back(id);
  }

  if (operands.empty()) {
    // Empty product.
    std::vector<std::size_t> shape;
    for (int l : out_labels) shape.push_back(sizes.at(l));
    return DenseTensor(shape, 1.0);
  }
  if (operands.size() <= 2) {
    return run_plan(make_plan(in_labels, operands, out_labels, sizes), operands, exec);
  }

  // Left-to-right pairwise contraction.
  DenseTensor acc;
  Labels acc_labels = in_labels[0];
  const DenseTensor* left = operands[0];
  for (std::size_t k = 1; k < operands.size(); ++k) {
    Labels kept;
    if (k + 1 == operands.size()) {
      kept = out_labels;
    } else {
      std::set<int> needed(out_labels.begin(), out_labels.end());
      for (std::size_t j = k + 1; j < operands.size(); ++j) needed.insert(in_labels[j].begin(), in_labels[j].end());
      // Follow the larger operand's layout so the big tensor is read contiguously.
      const bool right_first = operands[k]->size() > left->size();
      const Labels* first = right_first ? &in_labels[k] : &acc_labels;
      const Labels* second = right_first ? &acc_labels : &in_labels[k];
      for (const Labels* ls : {first, second}) {
        for (int l : *ls) {
          if (needed.count(l) && std::find(kept.begin(), kept.end(), l) == kept.end()) kept.push_back(l);
        }
      }
    }
    std::vector<const DenseTensor*> pair{left, operands[k]};
    DenseTensor next = run_plan(make_plan({acc_labels, in_labels[k]}, pair, kept, sizes), pair, exec);
    acc = std::move(next);
    acc_labels = std::move(kept);
    left = &acc;
  }
  return acc;
}

}  // namespace tenlog
