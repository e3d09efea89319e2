#include "swarmlife/chunk_set.hpp"

#include <string>

#include "swarmlife/errors.hpp"

namespace swarmlife {

ChunkSet::ChunkSet(std::size_t capacity)
    : capacity_(capacity), words_((capacity + kWordBits - 1) / kWordBits, 0) {}

ChunkSet::ChunkSet(std::size_t capacity, std::initializer_list<ChunkId> members)
    : ChunkSet(capacity) {
  for (ChunkId id : members) insert(id);
}

ChunkSet ChunkSet::full(std::size_t capacity) {
  ChunkSet set(capacity);
  set.fill();
  return set;
}

void ChunkSet::check_id(ChunkId id) const {
  if (id >= capacity_) {
    throw ConfigError("chunk id " + std::to_string(id) + " outside capacity " +
                      std::to_string(capacity_));
  }
}

void ChunkSet::check_capacity(const ChunkSet& other) const {
  if (other.capacity_ != capacity_) {
    throw ConfigError("chunk set capacity mismatch: " + std::to_string(capacity_) + " vs " +
                      std::to_string(other.capacity_));
  }
}

ChunkSet::Word ChunkSet::tail_mask() const noexcept {
  const std::size_t rem = capacity_ % kWordBits;
  return rem == 0 ? ~Word{0} : (Word{1} << rem) - 1;
}

bool ChunkSet::insert(ChunkId id) {
  check_id(id);
  Word& word = words_[id / kWordBits];
  const Word bit = Word{1} << (id % kWordBits);
  if ((word & bit) != 0) return false;
  word |= bit;
  ++size_;
  return true;
}

bool ChunkSet::erase(ChunkId id) {
  check_id(id);
  Word& word = words_[id / kWordBits];
  const Word bit = Word{1} << (id % kWordBits);
  if ((word & bit) == 0) return false;
  word &= ~bit;
  --size_;
  return true;
}

void ChunkSet::clear() noexcept {
  for (Word& w : words_) w = 0;
  size_ = 0;
}

void ChunkSet::fill() noexcept {
  for (Word& w : words_) w = ~Word{0};
  if (!words_.empty()) words_.back() &= tail_mask();
  size_ = capacity_;
}

ChunkSet& ChunkSet::operator|=(const ChunkSet& other) {
  check_capacity(other);
  std::size_t count = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    words_[w] |= other.words_[w];
    count += static_cast<std::size_t>(std::popcount(words_[w]));
  }
  size_ = count;
  return *this;
}

std::size_t ChunkSet::count_difference(const ChunkSet& other) const {
  check_capacity(other);
  std::size_t count = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    count += static_cast<std::size_t>(std::popcount(words_[w] & ~other.words_[w]));
  }
  return count;
}

ChunkId ChunkSet::nth_of_difference(const ChunkSet& other, std::size_t index) const {
  check_capacity(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word bits = words_[w] & ~other.words_[w];
    const auto in_word = static_cast<std::size_t>(std::popcount(bits));
    if (index >= in_word) {
      index -= in_word;
      continue;
    }
    for (; index > 0; --index) bits &= bits - 1;
    return static_cast<ChunkId>(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
  }
  throw ConfigError("difference index out of range");
}

ChunkId ChunkSet::nth_absent(std::size_t index) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word bits = ~words_[w];
    if (w + 1 == words_.size()) bits &= tail_mask();
    const auto in_word = static_cast<std::size_t>(std::popcount(bits));
    if (index >= in_word) {
      index -= in_word;
      continue;
    }
    for (; index > 0; --index) bits &= bits - 1;
    return static_cast<ChunkId>(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
  }
  throw ConfigError("absent index out of range");
}

std::vector<ChunkId> ChunkSet::members() const {
  std::vector<ChunkId> out;
  out.reserve(size_);
  for_each([&](ChunkId id) { out.push_back(id); });
  return out;
}

ChunkSet useful_chunks(const ChunkSet& uploader, const ChunkSet& customer) {
  if (uploader.capacity() != customer.capacity()) {
    throw ConfigError("useful_chunks: capacity mismatch (" + std::to_string(uploader.capacity()) +
                      " vs " + std::to_string(customer.capacity()) + ")");
  }
  ChunkSet out(uploader.capacity());
  uploader.for_each([&](ChunkId id) {
    if (!customer.contains(id)) out.insert(id);
  });
  return out;
}

}  // namespace swarmlife
