#pragma once

namespace photomech {

// Pair of per-species values for the two photo-switch populations.
// trans: rod-shaped low-energy state; cis: kinked high-energy state.
template <typename T>
struct Species {
  T trans{};
  T cis{};
};

template <typename T>
Species<T> operator+(const Species<T>& a, const Species<T>& b) {
  return {a.trans + b.trans, a.cis + b.cis};
}

template <typename T>
Species<T> operator-(const Species<T>& a, const Species<T>& b) {
  return {a.trans - b.trans, a.cis - b.cis};
}

template <typename T>
Species<T> operator*(double s, const Species<T>& a) {
  return {s * a.trans, s * a.cis};
}

}  // namespace photomech
