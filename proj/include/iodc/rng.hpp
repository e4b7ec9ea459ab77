#pragma once

#include <cstdint>
#include <span>

#include "iodc/bytes.hpp"

namespace iodc {

class Rng {
 public:
  virtual ~Rng() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  std::uint32_t next_u32();
  // Uniform in [0, bound) by rejection; bound must be nonzero.
  std::uint32_t uniform(std::uint32_t bound);
};

// Operating-system CSPRNG (libsodium randombytes).
class SystemRng final : public Rng {
 public:
  SystemRng();
  void fill(std::span<std::uint8_t> out) override;
};

// Deterministic ChaCha20 keystream keyed from a 64-bit seed. Test mode only:
// the CLI refuses to construct one without --insecure-test.
class SeededRng final : public Rng {
 public:
  explicit SeededRng(std::uint64_t seed);
  void fill(std::span<std::uint8_t> out) override;

 private:
  void refill();

  Bytes32 key_{};
  std::uint32_t block_ = 0;
  std::uint8_t buf_[64]{};
  std::size_t pos_ = sizeof(buf_);
};

// Idempotent; every entry point that touches libsodium calls it.
void ensure_sodium();

}  // namespace iodc
