#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace memgne {

/// An interned object of the alphabet: a base name plus a tuple of integer
/// parameters, e.g. `EXIT{2,3,5,1}`. Equal (base, params) pairs share one id,
/// so comparison and hashing are integer operations.
///
/// The intern table is process-wide and thread-safe.
class ObjectSymbol {
public:
    ObjectSymbol() = default;

    static ObjectSymbol intern(std::string_view base, std::span<const std::int64_t> params = {});
    static ObjectSymbol intern(std::string_view base, std::initializer_list<std::int64_t> params)
    {
        return intern(base, std::span<const std::int64_t>(params.begin(), params.size()));
    }

    std::uint32_t id() const noexcept { return id_; }
    const std::string& base() const;
    const std::vector<std::int64_t>& params() const;
    std::size_t arity() const { return params().size(); }

    /// `base` or `base{p1,p2,...}`.
    const std::string& text() const;

    friend bool operator==(ObjectSymbol a, ObjectSymbol b) noexcept { return a.id_ == b.id_; }
    friend bool operator!=(ObjectSymbol a, ObjectSymbol b) noexcept { return a.id_ != b.id_; }

private:
    explicit ObjectSymbol(std::uint32_t id) : id_(id) {}
    std::uint32_t id_ = 0;
};

/// Orders symbols by their textual form; used wherever output must not
/// depend on interning order.
struct SymbolTextLess {
    bool operator()(ObjectSymbol a, ObjectSymbol b) const;
};

} // namespace memgne

template <>
struct std::hash<memgne::ObjectSymbol> {
    std::size_t operator()(memgne::ObjectSymbol s) const noexcept { return s.id(); }
};
