#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tvgenus {

/// Permutation of {0,1,2,3}, stored as the image of each vertex.
class Perm4 {
 public:
  constexpr Perm4() : image_{0, 1, 2, 3} {}
  constexpr Perm4(int a, int b, int c, int d)
      : image_{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
               static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)} {}

  constexpr int operator[](int i) const { return image_[static_cast<std::size_t>(i)]; }

  constexpr int pre_image_of(int v) const {
    for (int i = 0; i < 4; ++i)
      if (image_[static_cast<std::size_t>(i)] == v) return i;
    return -1;
  }

  /// (p * q)[i] = p[q[i]]
  constexpr Perm4 operator*(const Perm4& q) const {
    return Perm4((*this)[q[0]], (*this)[q[1]], (*this)[q[2]], (*this)[q[3]]);
  }

  constexpr Perm4 inverse() const {
    Perm4 out;
    for (int i = 0; i < 4; ++i) out.image_[image_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
    return out;
  }

  constexpr int sign() const {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (image_[static_cast<std::size_t>(i)] > image_[static_cast<std::size_t>(j)]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
  }

  constexpr bool is_identity() const { return *this == Perm4(); }

  constexpr bool operator==(const Perm4&) const = default;

  /// Index in lexicographic order of image sequences (0123 -> 0, 3210 -> 23).
  constexpr int ordered_index() const {
    int index = 0;
    std::array<bool, 4> used{};
    constexpr std::array<int, 4> factorial{6, 2, 1, 1};
    for (int i = 0; i < 4; ++i) {
      const int v = image_[static_cast<std::size_t>(i)];
      int smaller = 0;
      for (int w = 0; w < v; ++w)
        if (!used[static_cast<std::size_t>(w)]) ++smaller;
      index += smaller * factorial[static_cast<std::size_t>(i)];
      used[static_cast<std::size_t>(v)] = true;
    }
    return index;
  }

  static constexpr Perm4 from_ordered_index(int index) {
    std::array<int, 4> pool{0, 1, 2, 3};
    int remaining = 4;
    constexpr std::array<int, 4> factorial{6, 2, 1, 1};
    std::array<int, 4> img{};
    for (int i = 0; i < 4; ++i) {
      const int k = index / factorial[static_cast<std::size_t>(i)];
      index %= factorial[static_cast<std::size_t>(i)];
      img[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(k)];
      for (int j = k; j + 1 < remaining; ++j) pool[static_cast<std::size_t>(j)] = pool[static_cast<std::size_t>(j + 1)];
      --remaining;
    }
    return Perm4(img[0], img[1], img[2], img[3]);
  }

  /// Index in the sign-alternating order used by isomorphism signatures:
  /// lexicographic pairs (2k, 2k+1) with the even permutation first.
  constexpr int sign_ordered_index() const {
    const int ordered = ordered_index();
    const int pair_base = ordered & ~1;
    const bool first_is_even = from_ordered_index(pair_base).sign() == 1;
    const bool this_is_first = ordered == pair_base;
    return pair_base + ((this_is_first == first_is_even) ? 0 : 1);
  }

  static constexpr Perm4 from_sign_ordered_index(int index) {
    const int pair_base = index & ~1;
    const Perm4 first = from_ordered_index(pair_base);
    const Perm4 second = from_ordered_index(pair_base + 1);
    const Perm4 even = first.sign() == 1 ? first : second;
    const Perm4 odd = first.sign() == 1 ? second : first;
    return (index & 1) ? odd : even;
  }

  std::string str() const {
    std::string s(4, '0');
    for (int i = 0; i < 4; ++i) s[static_cast<std::size_t>(i)] = static_cast<char>('0' + image_[static_cast<std::size_t>(i)]);
    return s;
  }

  /// Parses the 4-digit image form ("1032"). Throws on anything that is not a bijection.
  static Perm4 parse(std::string_view text) {
    if (text.size() != 4) throw std::invalid_argument("permutation must have 4 digits: '" + std::string(text) + "'");
    std::array<int, 4> img{};
    std::array<bool, 4> seen{};
    for (std::size_t i = 0; i < 4; ++i) {
      const int v = text[i] - '0';
      if (v < 0 || v > 3 || seen[static_cast<std::size_t>(v)])
        throw std::invalid_argument("not a permutation of 0123: '" + std::string(text) + "'");
      seen[static_cast<std::size_t>(v)] = true;
      img[i] = v;
    }
    return Perm4(img[0], img[1], img[2], img[3]);
  }

 private:
  std::array<std::uint8_t, 4> image_;
};

inline constexpr int kPerm4Count = 24;

}  // namespace tvgenus
