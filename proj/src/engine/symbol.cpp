#include "memgne/symbol.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace memgne {

namespace {

struct Entry {
    std::string base;
    std::vector<std::int64_t> params;
    std::string text;
};

class SymbolTable {
public:
    SymbolTable()
    {
        // id 0 is the default-constructed symbol
        entries_.push_back(Entry{"", {}, ""});
        index_.emplace("", 0);
    }

    std::uint32_t intern(std::string_view base, std::span<const std::int64_t> params)
    {
        std::string text(base);
        if (!params.empty()) {
            text += '{';
            for (std::size_t i = 0; i < params.size(); ++i) {
                if (i) text += ',';
                text += std::to_string(params[i]);
            }
            text += '}';
        }
        {
            std::shared_lock lock(mutex_);
            if (auto it = index_.find(text); it != index_.end()) return it->second;
        }
        std::unique_lock lock(mutex_);
        if (auto it = index_.find(text); it != index_.end()) return it->second;
        auto id = static_cast<std::uint32_t>(entries_.size());
        entries_.push_back(Entry{std::string(base), std::vector<std::int64_t>(params.begin(), params.end()), text});
        index_.emplace(std::move(text), id);
        return id;
    }

    const Entry& at(std::uint32_t id) const
    {
        std::shared_lock lock(mutex_);
        return entries_.at(id);
    }

private:
    mutable std::shared_mutex mutex_;
    std::deque<Entry> entries_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

SymbolTable& table()
{
    static SymbolTable t;
    return t;
}

} // namespace

ObjectSymbol ObjectSymbol::intern(std::string_view base, std::span<const std::int64_t> params)
{
    return ObjectSymbol(table().intern(base, params));
}

const std::string& ObjectSymbol::base() const { return table().at(id_).base; }
const std::vector<std::int64_t>& ObjectSymbol::params() const { return table().at(id_).params; }
const std::string& ObjectSymbol::text() const { return table().at(id_).text; }

bool SymbolTextLess::operator()(ObjectSymbol a, ObjectSymbol b) const
{
    if (a == b) return false;
    const auto& ea = a.base();
    const auto& eb = b.base();
    if (ea != eb) return ea < eb;
    return a.params() < b.params();
}

} // namespace memgne
