#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace awcobar {

using Int = boost::multiprecision::cpp_int;

/// Thrown when an input violates the precondition of an operation.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline int koszul(long long a, long long b) { return ((a * b) % 2 == 0) ? 1 : -1; }
inline int parity_sign(long long a) { return (a % 2 == 0) ? 1 : -1; }

/// Finite integer linear combination over an ordered basis type.
/// Zero coefficients are never stored.
template <class K>
class Lin {
public:
    using Basis = K;
    using Map = std::map<K, Int>;

    Lin() = default;
    explicit Lin(const K& k, Int c = 1) { add(k, std::move(c)); }

    void add(const K& k, const Int& c)
    {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    void add(const K& k, int c) { add(k, Int(c)); }

    void add_scaled(const Lin& other, const Int& c)
    {
        if (c == 0) return;
        for (const auto& [k, v] : other.terms_) add(k, v * c);
    }

    Lin& operator+=(const Lin& other)
    {
        for (const auto& [k, v] : other.terms_) add(k, v);
        return *this;
    }
    Lin& operator-=(const Lin& other)
    {
        for (const auto& [k, v] : other.terms_) add(k, Int(-v));
        return *this;
    }
    Lin& operator*=(const Int& c)
    {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, v] : terms_) v *= c;
        return *this;
    }
    friend Lin operator+(Lin a, const Lin& b) { return a += b; }
    friend Lin operator-(Lin a, const Lin& b) { return a -= b; }
    friend Lin operator-(Lin a) { return a *= Int(-1); }
    friend Lin operator*(Lin a, const Int& c) { return a *= c; }
    friend Lin operator*(const Int& c, Lin a) { return a *= c; }
    friend bool operator==(const Lin& a, const Lin& b) { return a.terms_ == b.terms_; }

    Int coeff(const K& k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? Int(0) : it->second;
    }

    bool empty() const { return terms_.empty(); }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }
    const Map& terms() const { return terms_; }
    Map& mutable_terms() { return terms_; }

private:
    Map terms_;
};

/// Extends `f : K -> Lin<K2>` linearly.
template <class K, class F>
auto map_linear(const Lin<K>& x, F&& f) -> decltype(f(std::declval<const K&>()))
{
    decltype(f(std::declval<const K&>())) out;
    for (const auto& [k, c] : x) out.add_scaled(f(k), c);
    return out;
}

/// Bilinear extension of `f : (A, B) -> Lin<C>`.
template <class A, class B, class F>
auto map_bilinear(const Lin<A>& x, const Lin<B>& y, F&& f)
    -> decltype(f(std::declval<const A&>(), std::declval<const B&>()))
{
    decltype(f(std::declval<const A&>(), std::declval<const B&>())) out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) out.add_scaled(f(a, b), ca * cb);
    return out;
}

template <class K, class Pred>
Lin<K> filter(const Lin<K>& x, Pred&& keep)
{
    Lin<K> out;
    for (const auto& [k, c] : x)
        if (keep(k)) out.add(k, c);
    return out;
}

/// Thread-safe lazy table. Readers see either no entry or the final value;
/// the lock is not held while a value is computed, so computations may recurse.
template <class K, class V>
class Memo {
public:
    template <class F>
    V get(const K& k, F&& compute) const
    {
        {
            std::shared_lock lock(state_->mutex);
            if (auto it = state_->table.find(k); it != state_->table.end()) return it->second;
        }
        V v = compute();
        std::unique_lock lock(state_->mutex);
        return state_->table.try_emplace(k, std::move(v)).first->second;
    }

    /// Test hook: overwrite a stored value.
    void set(const K& k, V v)
    {
        std::unique_lock lock(state_->mutex);
        state_->table.insert_or_assign(k, std::move(v));
    }

    void clear()
    {
        std::unique_lock lock(state_->mutex);
        state_->table.clear();
    }

private:
    struct State {
        std::shared_mutex mutex;
        std::map<K, V> table;
    };
    std::shared_ptr<State> state_ = std::make_shared<State>();
};

} // namespace awcobar
