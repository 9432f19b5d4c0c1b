#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace coa {

using ClassId = int;  // 1 = best, L = worst

enum class ClassCompare { PaperWorstClass, ReverseLex };
enum class Accumulation { Count, Length };

/// Fixed ordering policy for one search: how path-class vectors compare and
/// what they accumulate (edge counts or edge lengths) per class.
struct OrderMode {
  ClassCompare compare = ClassCompare::PaperWorstClass;
  Accumulation accum = Accumulation::Count;
};

/**
 * Per-class accumulator of a path's edges, indexed by class 1..L.
 * Carries a distinguished TOP value that compares greater than every finite
 * vector, used to initialize unreached vertices.
 */
class ClassVector {
public:
  ClassVector() = default;

  static ClassVector zero(int num_classes);
  static ClassVector top(int num_classes);
  // Unit contribution of a single edge of class `cls`: `amount` at index cls.
  static ClassVector unit(int num_classes, ClassId cls, double amount = 1.0);

  bool is_top() const { return top_; }
  int size() const { return static_cast<int>(vals_.size()); }
  double at(ClassId cls) const;          // 1-based, finite vectors only
  const std::vector<double>& values() const { return vals_; }

  // Greatest class with a nonzero entry; 0 for the all-zero vector.
  // Calling on TOP is a logic error.
  int worst_class() const;

  friend ClassVector operator+(const ClassVector& a, const ClassVector& b);
  ClassVector& operator+=(const ClassVector& b);

  // Text rendering "[n1,n2,...,nL]"; integers in count mode.
  std::string to_string(Accumulation accum = Accumulation::Count) const;

private:
  std::vector<double> vals_;  // 0-based storage for classes 1..L
  bool top_ = false;
};

std::strong_ordering cv_compare(const ClassVector& a, const ClassVector& b,
                                const OrderMode& mode);

inline bool cv_less(const ClassVector& a, const ClassVector& b, const OrderMode& m) {
  return cv_compare(a, b, m) == std::strong_ordering::less;
}
inline bool cv_leq(const ClassVector& a, const ClassVector& b, const OrderMode& m) {
  return cv_compare(a, b, m) != std::strong_ordering::greater;
}
inline bool cv_equal(const ClassVector& a, const ClassVector& b, const OrderMode& m) {
  return cv_compare(a, b, m) == std::strong_ordering::equal;
}

/// The four-key lexicographic priority of a queued edge.
struct QueueKey {
  ClassVector k1;  // theta_T(u) + theta_hat(u,v) + theta_hat(v, v_g)
  ClassVector k2;  // theta_T(u) + theta_hat(u,v)
  double k3 = 0.0; // g_T(u) + c_hat(u,v) + h_hat(v)
  double k4 = 0.0; // g_T(u) + c_hat(u,v)
};

// Absolute tolerance for treating k3/k4 values as equal.
inline constexpr double kKeyTolerance = 1e-9;

// Lexicographic over (k1,k2,k3,k4). Numeric keys compare equal within
// kKeyTolerance. Does not include the final vertex-id tie-break; the queue
// applies that on whole entries.
std::strong_ordering key_compare(const QueueKey& a, const QueueKey& b,
                                 const OrderMode& mode);

/// Evaluated class/length summary of a concrete path.
struct PathSignature {
  ClassVector theta;
  double length = 0.0;
  int hops = 0;
};

}  // namespace coa
