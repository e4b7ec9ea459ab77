#pragma once

// BPV precomputation: an offline table of k pairs (r'_i, r'_i * G) turns each
// online scalar multiplication into the sum of a secret random v-subset.
// The designated variant also stores r'_i * P for one fixed point P (the
// receiver's public key), so ECIES needs no online scalar multiplication.
//
// Table construction is the data-parallel hot spot: bpv_offline and
// dbpv_offline run their k independent scalar multiplications under OpenMP,
// while the *_serial variants are the single-threaded reference used by the
// tests and the kernel benchmark. Both draw every r'_i from the caller's rng
// up front and in order, so the two paths produce identical tables.

#include <cstdint>
#include <variant>
#include <vector>

#include "iodc/bytes.hpp"
#include "iodc/group.hpp"
#include "iodc/rng.hpp"

namespace iodc {

enum class ParamPolicy {
  Supported,  // only (28, 256) and (18, 1024)
  Unsafe,     // any 1 <= v <= k; tests and experiments
};

struct BpvParams {
  std::uint32_t k = 256;
  std::uint32_t v = 28;

  static BpvParams standard() { return {256, 28}; }
  static BpvParams large() { return {1024, 18}; }
  // Throws InvalidParams when (k, v) is not admissible under the policy.
  static BpvParams make(std::uint32_t k, std::uint32_t v,
                        ParamPolicy policy = ParamPolicy::Supported);

  bool is_supported() const noexcept;
  bool operator==(const BpvParams&) const = default;
};

inline constexpr std::uint32_t kMaxTableEntries = 1u << 20;

struct PrecompEntry {
  Scalar r;
  GroupElement R;
};

struct DesignatedEntry {
  Scalar r;
  GroupElement R;
  GroupElement S;
};

struct PrecompTable {
  BpvParams params;
  std::vector<PrecompEntry> entries;

  // k * (scalar + point) bytes, excluding any co-stored private key.
  std::size_t entry_payload_bytes() const noexcept;
};

struct DesignatedTable {
  BpvParams params;
  GroupElement designated_point;
  Bytes32 owner_binding{};
  std::vector<DesignatedEntry> entries;

  std::size_t entry_payload_bytes() const noexcept;
};

struct SubsetSelection {
  std::vector<std::uint32_t> indices;
};

struct BpvSample {
  Scalar r;
  GroupElement R;
};

struct DbpvSample {
  Scalar r;
  GroupElement R;
  GroupElement S;
};

// Distinct indices by rejection sampling; order is the draw order.
SubsetSelection sample_subset(const BpvParams& params, Rng& rng);

PrecompTable bpv_offline(const BpvParams& params, Rng& rng, OpCounter& ctr);
PrecompTable bpv_offline_serial(const BpvParams& params, Rng& rng, OpCounter& ctr);

// Builds a table from caller-chosen scalars (toy tables in tests).
PrecompTable bpv_table_from_scalars(const BpvParams& params, std::span<const Scalar> scalars,
                                    OpCounter& ctr);

BpvSample bpv_online(const PrecompTable& table, Rng& rng, OpCounter& ctr);
BpvSample bpv_online_with(const PrecompTable& table, const SubsetSelection& subset,
                          OpCounter& ctr);

DesignatedTable dbpv_offline(const BpvParams& params, const GroupElement& designated_point,
                             const Bytes32& owner_binding, Rng& rng, OpCounter& ctr);
DesignatedTable dbpv_offline_serial(const BpvParams& params,
                                    const GroupElement& designated_point,
                                    const Bytes32& owner_binding, Rng& rng, OpCounter& ctr);
DesignatedTable dbpv_table_from_scalars(const BpvParams& params,
                                        const GroupElement& designated_point,
                                        const Bytes32& owner_binding,
                                        std::span<const Scalar> scalars, OpCounter& ctr);

DbpvSample dbpv_online(const DesignatedTable& table, Rng& rng, OpCounter& ctr);
DbpvSample dbpv_online_with(const DesignatedTable& table, const SubsetSelection& subset,
                            OpCounter& ctr);

// Recomputes every entry (k or 2k scalar multiplications); throws
// TableIntegrity on the first mismatch.
void check_table(const PrecompTable& table);
void check_table(const DesignatedTable& table);

// log2(binomial(k, v)), exact big-integer binomial rounded once to double.
double subset_space_bits(const BpvParams& params);

// "IODCBPV1" table files.
Bytes serialize_table(const PrecompTable& table);
Bytes serialize_table(const DesignatedTable& table);

using AnyTable = std::variant<PrecompTable, DesignatedTable>;

struct TableLoadOptions {
  ParamPolicy policy = ParamPolicy::Supported;
  bool verify_entries = false;  // re-run check_table after parsing
};

AnyTable deserialize_table(ByteView bytes, const TableLoadOptions& opts = {});
PrecompTable deserialize_standard_table(ByteView bytes, const TableLoadOptions& opts = {});
DesignatedTable deserialize_designated_table(ByteView bytes, const TableLoadOptions& opts = {});

}  // namespace iodc
