#include "iodc/bpv.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "iodc/error.hpp"

namespace iodc {
namespace {

std::vector<Scalar> draw_scalars(std::uint32_t k, Rng& rng) {
  std::vector<Scalar> out;
  out.reserve(k);
  for (std::uint32_t i = 0; i < k; ++i) out.push_back(random_scalar(rng));
  return out;
}

void check_scalar_count(const BpvParams& params, std::span<const Scalar> scalars) {
  if (scalars.size() != params.k)
    throw Error(ErrorCode::InvalidParams, "expected " + std::to_string(params.k) + " scalars");
}

void check_designated_point(const GroupElement& p) {
  if (p.is_identity())
    throw Error(ErrorCode::InvalidDesignatedPoint, "designated point is the identity");
}

template <typename Table>
void check_shape(const Table& table, const SubsetSelection& subset) {
  if (table.entries.size() != table.params.k || table.params.v == 0 ||
      table.params.v > table.params.k)
    throw Error(ErrorCode::TableIntegrity, "table shape does not match its parameters");
  if (subset.indices.size() != table.params.v)
    throw Error(ErrorCode::TableIntegrity, "subset size does not match v");
  for (auto idx : subset.indices) {
    if (idx >= table.entries.size())
      throw Error(ErrorCode::TableIntegrity, "subset index out of range");
  }
  auto sorted = subset.indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::TableIntegrity, "subset has repeated indices");
}

// The two kernels below are the parallel hot loops. Each thread keeps a
// private OpCounter; the totals are folded into the caller's counter.

void fill_points(std::span<const Scalar> scalars, std::vector<PrecompEntry>& out,
                 OpCounter& ctr) {
  const auto n = static_cast<std::int64_t>(scalars.size());
  out.resize(scalars.size());
#pragma omp parallel
  {
    OpCounter local;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      out[i] = {scalars[i], scalar_mult(scalars[i], GroupElement::generator(), local)};
    }
#pragma omp critical
    ctr += local;
  }
}

void fill_designated(std::span<const Scalar> scalars, const GroupElement& point,
                     std::vector<DesignatedEntry>& out, OpCounter& ctr) {
  const auto n = static_cast<std::int64_t>(scalars.size());
  out.resize(scalars.size());
#pragma omp parallel
  {
    OpCounter local;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      out[i] = {scalars[i], scalar_mult(scalars[i], GroupElement::generator(), local),
                scalar_mult(scalars[i], point, local)};
    }
#pragma omp critical
    ctr += local;
  }
}

void fill_points_serial(std::span<const Scalar> scalars, std::vector<PrecompEntry>& out,
                        OpCounter& ctr) {
  out.clear();
  out.reserve(scalars.size());
  for (const auto& r : scalars) out.push_back({r, scalar_mult(r, GroupElement::generator(), ctr)});
}

void fill_designated_serial(std::span<const Scalar> scalars, const GroupElement& point,
                            std::vector<DesignatedEntry>& out, OpCounter& ctr) {
  out.clear();
  out.reserve(scalars.size());
  for (const auto& r : scalars) {
    out.push_back({r, scalar_mult(r, GroupElement::generator(), ctr), scalar_mult(r, point, ctr)});
  }
}

}  // namespace

BpvParams BpvParams::make(std::uint32_t k, std::uint32_t v, ParamPolicy policy) {
  BpvParams p{k, v};
  if (policy == ParamPolicy::Supported) {
    if (!p.is_supported())
      throw Error(ErrorCode::InvalidParams,
                  "unsupported (v, k) = (" + std::to_string(v) + ", " + std::to_string(k) +
                      "); supported: (28, 256), (18, 1024)");
    return p;
  }
  if (k == 0 || k > kMaxTableEntries || v == 0 || v > k)
    throw Error(ErrorCode::InvalidParams, "need 1 <= v <= k <= 2^20");
  return p;
}

bool BpvParams::is_supported() const noexcept {
  return *this == standard() || *this == large();
}

std::size_t PrecompTable::entry_payload_bytes() const noexcept {
  return entries.size() * (kScalarLen + kElementLen);
}

std::size_t DesignatedTable::entry_payload_bytes() const noexcept {
  return entries.size() * (kScalarLen + 2 * kElementLen);
}

SubsetSelection sample_subset(const BpvParams& params, Rng& rng) {
  SubsetSelection sel;
  sel.indices.reserve(params.v);
  std::vector<bool> taken(params.k, false);
  while (sel.indices.size() < params.v) {
    const std::uint32_t idx = rng.uniform(params.k);
    if (taken[idx]) continue;
    taken[idx] = true;
    sel.indices.push_back(idx);
  }
  return sel;
}

PrecompTable bpv_offline(const BpvParams& params, Rng& rng, OpCounter& ctr) {
  PrecompTable table{params, {}};
  const auto scalars = draw_scalars(params.k, rng);
  fill_points(scalars, table.entries, ctr);
  return table;
}

PrecompTable bpv_offline_serial(const BpvParams& params, Rng& rng, OpCounter& ctr) {
  PrecompTable table{params, {}};
  const auto scalars = draw_scalars(params.k, rng);
  fill_points_serial(scalars, table.entries, ctr);
  return table;
}

PrecompTable bpv_table_from_scalars(const BpvParams& params, std::span<const Scalar> scalars,
                                    OpCounter& ctr) {
  check_scalar_count(params, scalars);
  PrecompTable table{params, {}};
  fill_points_serial(scalars, table.entries, ctr);
  return table;
}

BpvSample bpv_online_with(const PrecompTable& table, const SubsetSelection& subset,
                          OpCounter& ctr) {
  check_shape(table, subset);
  const auto& first = table.entries[subset.indices.front()];
  BpvSample out{first.r, first.R};
  for (std::size_t j = 1; j < subset.indices.size(); ++j) {
    const auto& e = table.entries[subset.indices[j]];
    out.r += e.r;
    out.R = point_add(out.R, e.R, ctr);
  }
  return out;
}

BpvSample bpv_online(const PrecompTable& table, Rng& rng, OpCounter& ctr) {
  return bpv_online_with(table, sample_subset(table.params, rng), ctr);
}

DesignatedTable dbpv_offline(const BpvParams& params, const GroupElement& designated_point,
                             const Bytes32& owner_binding, Rng& rng, OpCounter& ctr) {
  check_designated_point(designated_point);
  DesignatedTable table{params, designated_point, owner_binding, {}};
  const auto scalars = draw_scalars(params.k, rng);
  fill_designated(scalars, designated_point, table.entries, ctr);
  return table;
}

DesignatedTable dbpv_offline_serial(const BpvParams& params,
                                    const GroupElement& designated_point,
                                    const Bytes32& owner_binding, Rng& rng, OpCounter& ctr) {
  check_designated_point(designated_point);
  DesignatedTable table{params, designated_point, owner_binding, {}};
  const auto scalars = draw_scalars(params.k, rng);
  fill_designated_serial(scalars, designated_point, table.entries, ctr);
  return table;
}

DesignatedTable dbpv_table_from_scalars(const BpvParams& params,
                                        const GroupElement& designated_point,
                                        const Bytes32& owner_binding,
                                        std::span<const Scalar> scalars, OpCounter& ctr) {
  check_designated_point(designated_point);
  check_scalar_count(params, scalars);
  DesignatedTable table{params, designated_point, owner_binding, {}};
  fill_designated_serial(scalars, designated_point, table.entries, ctr);
  return table;
}

DbpvSample dbpv_online_with(const DesignatedTable& table, const SubsetSelection& subset,
                            OpCounter& ctr) {
  check_shape(table, subset);
  const auto& first = table.entries[subset.indices.front()];
  DbpvSample out{first.r, first.R, first.S};
  for (std::size_t j = 1; j < subset.indices.size(); ++j) {
    const auto& e = table.entries[subset.indices[j]];
    out.r += e.r;
    out.R = point_add(out.R, e.R, ctr);
    out.S = point_add(out.S, e.S, ctr);
  }
  return out;
}

DbpvSample dbpv_online(const DesignatedTable& table, Rng& rng, OpCounter& ctr) {
  return dbpv_online_with(table, sample_subset(table.params, rng), ctr);
}

void check_table(const PrecompTable& table) {
  if (table.entries.size() != table.params.k)
    throw Error(ErrorCode::TableIntegrity, "entry count does not match k");
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const auto& e = table.entries[i];
    if (!(e.R == GroupElement::generator().mul(e.r)))
      throw Error(ErrorCode::TableIntegrity, "entry " + std::to_string(i) + ": R' != r'G");
  }
}

void check_table(const DesignatedTable& table) {
  if (table.entries.size() != table.params.k)
    throw Error(ErrorCode::TableIntegrity, "entry count does not match k");
  check_designated_point(table.designated_point);
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const auto& e = table.entries[i];
    if (!(e.R == GroupElement::generator().mul(e.r)) ||
        !(e.S == table.designated_point.mul(e.r)))
      throw Error(ErrorCode::TableIntegrity, "entry " + std::to_string(i) + " is inconsistent");
  }
}

double subset_space_bits(const BpvParams& params) {
  using boost::multiprecision::cpp_int;
  if (params.v > params.k) throw Error(ErrorCode::InvalidParams, "v exceeds k");
  cpp_int c = 1;
  for (std::uint32_t i = 1; i <= params.v; ++i) {
    c *= params.k - params.v + i;
    c /= i;  // exact: c is binomial(k - v + i, i) here
  }
  const auto msb = boost::multiprecision::msb(c);
  if (msb < 63) return std::log2(c.convert_to<double>());
  const unsigned shift = static_cast<unsigned>(msb) - 62;
  const auto top = static_cast<cpp_int>(c >> shift).convert_to<std::uint64_t>();
  return std::log2(static_cast<double>(top)) + shift;
}

}  // namespace iodc
