#include "coa/class_vector.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace coa {

ClassVector ClassVector::zero(int num_classes) {
  ClassVector cv;
  cv.vals_.assign(static_cast<size_t>(num_classes), 0.0);
  return cv;
}

ClassVector ClassVector::top(int num_classes) {
  ClassVector cv = zero(num_classes);
  cv.top_ = true;
  return cv;
}

ClassVector ClassVector::unit(int num_classes, ClassId cls, double amount) {
  if (cls < 1 || cls > num_classes)
    throw std::out_of_range("ClassVector::unit: class out of range");
  ClassVector cv = zero(num_classes);
  cv.vals_[static_cast<size_t>(cls - 1)] = amount;
  return cv;
}

double ClassVector::at(ClassId cls) const {
  if (top_) throw std::logic_error("ClassVector::at on TOP");
  if (cls < 1 || cls > size())
    throw std::out_of_range("ClassVector::at: class out of range");
  return vals_[static_cast<size_t>(cls - 1)];
}

int ClassVector::worst_class() const {
  if (top_) throw std::logic_error("worst_class of TOP is undefined");
  for (int k = size(); k >= 1; --k)
    if (vals_[static_cast<size_t>(k - 1)] > 0.0) return k;
  return 0;
}

ClassVector operator+(const ClassVector& a, const ClassVector& b) {
  ClassVector r = a;
  r += b;
  return r;
}

ClassVector& ClassVector::operator+=(const ClassVector& b) {
  if (size() != b.size())
    throw std::invalid_argument("ClassVector: length mismatch");
  if (b.top_) top_ = true;
  if (top_) return *this;  // TOP absorbs
  for (int i = 0; i < size(); ++i) vals_[static_cast<size_t>(i)] += b.vals_[static_cast<size_t>(i)];
  return *this;
}

std::string ClassVector::to_string(Accumulation accum) const {
  if (top_) return "[TOP]";
  std::string s = "[";
  char buf[32];
  for (int i = 0; i < size(); ++i) {
    if (i) s += ",";
    double v = vals_[static_cast<size_t>(i)];
    if (accum == Accumulation::Count) {
      std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(v)));
    } else {
      std::snprintf(buf, sizeof buf, "%.3f", v);
    }
    s += buf;
  }
  s += "]";
  return s;
}

namespace {

std::strong_ordering order_of(double a, double b) {
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering cv_compare(const ClassVector& a, const ClassVector& b,
                                const OrderMode& mode) {
  if (a.is_top() || b.is_top()) {
    if (a.is_top() && b.is_top()) return std::strong_ordering::equal;
    return a.is_top() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (a.size() != b.size())
    throw std::invalid_argument("cv_compare: length mismatch");

  if (mode.compare == ClassCompare::ReverseLex) {
    for (int k = a.size(); k >= 1; --k) {
      auto ord = order_of(a.at(k), b.at(k));
      if (ord != std::strong_ordering::equal) return ord;
    }
    return std::strong_ordering::equal;
  }

  // PaperWorstClass: compare the worst included class, then its multiplicity.
  const int wa = a.worst_class();
  const int wb = b.worst_class();
  if (wa != wb) return wa < wb ? std::strong_ordering::less : std::strong_ordering::greater;
  if (wa == 0) return std::strong_ordering::equal;
  return order_of(a.at(wa), b.at(wa));
}

std::strong_ordering key_compare(const QueueKey& a, const QueueKey& b,
                                 const OrderMode& mode) {
  auto ord = cv_compare(a.k1, b.k1, mode);
  if (ord != std::strong_ordering::equal) return ord;
  ord = cv_compare(a.k2, b.k2, mode);
  if (ord != std::strong_ordering::equal) return ord;
  if (std::abs(a.k3 - b.k3) > kKeyTolerance) return order_of(a.k3, b.k3);
  if (std::abs(a.k4 - b.k4) > kKeyTolerance) return order_of(a.k4, b.k4);
  return std::strong_ordering::equal;
}

}  // namespace coa
