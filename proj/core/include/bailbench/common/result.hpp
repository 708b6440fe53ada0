#pragma once

#include <stdexcept>
#include <utility>
#include <variant>

namespace bailbench {

// Value-or-error for per-item outcomes that are results, not exceptions
// (a discarded document, an unparseable model reply).
template <class T, class E>
class Result {
 public:
  static Result success(T value) { return Result(std::in_place_index<0>, std::move(value)); }
  static Result failure(E error) { return Result(std::in_place_index<1>, std::move(error)); }

  bool ok() const noexcept { return state_.index() == 0; }
  explicit operator bool() const noexcept { return ok(); }

  const T& value() const& {
    if (!ok()) throw std::logic_error("Result::value() on failure");
    return std::get<0>(state_);
  }
  T& value() & {
    if (!ok()) throw std::logic_error("Result::value() on failure");
    return std::get<0>(state_);
  }
  T&& value() && {
    if (!ok()) throw std::logic_error("Result::value() on failure");
    return std::get<0>(std::move(state_));
  }
  const E& error() const& {
    if (ok()) throw std::logic_error("Result::error() on success");
    return std::get<1>(state_);
  }

  const T* operator->() const { return &value(); }
  const T& operator*() const& { return value(); }

 private:
  template <std::size_t I, class V>
  Result(std::in_place_index_t<I> tag, V&& v) : state_(tag, std::forward<V>(v)) {}

  std::variant<T, E> state_;
};

}  // namespace bailbench
