#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace swarmlife {

using ChunkId = std::uint32_t;

/// Fixed-capacity membership set over chunk ids {0, ..., capacity-1}.
///
/// Stored as a packed bitset with a cached cardinality, so insert/test are
/// O(1) and set differences run a word at a time.
class ChunkSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  ChunkSet() = default;
  explicit ChunkSet(std::size_t capacity);
  ChunkSet(std::size_t capacity, std::initializer_list<ChunkId> members);

  static ChunkSet full(std::size_t capacity);

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  bool is_full() const noexcept { return size_ == capacity_; }

  bool contains(ChunkId id) const noexcept {
    return id < capacity_ && ((words_[id / kWordBits] >> (id % kWordBits)) & 1U) != 0;
  }

  // Returns true when the chunk was not already present.
  bool insert(ChunkId id);
  bool erase(ChunkId id);
  void clear() noexcept;
  void fill() noexcept;

  ChunkSet& operator|=(const ChunkSet& other);

  // |*this \ other|, without materializing the difference.
  std::size_t count_difference(const ChunkSet& other) const;
  // The index-th smallest member of *this \ other; index < count_difference(other).
  ChunkId nth_of_difference(const ChunkSet& other, std::size_t index) const;

  // The index-th smallest id NOT in the set; index < capacity() - size().
  ChunkId nth_absent(std::size_t index) const;

  std::vector<ChunkId> members() const;
  std::span<const Word> words() const noexcept { return words_; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const int bit = std::countr_zero(bits);
        fn(static_cast<ChunkId>(w * kWordBits + static_cast<std::size_t>(bit)));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const ChunkSet& a, const ChunkSet& b) noexcept {
    return a.capacity_ == b.capacity_ && a.words_ == b.words_;
  }

 private:
  void check_id(ChunkId id) const;
  void check_capacity(const ChunkSet& other) const;
  Word tail_mask() const noexcept;

  std::size_t capacity_ = 0;
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

/// Chunks the uploader holds that the customer lacks. Throws ConfigError on
/// a capacity mismatch.
ChunkSet useful_chunks(const ChunkSet& uploader, const ChunkSet& customer);

}  // namespace swarmlife
