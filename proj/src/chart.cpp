#include "edsw/chart.hpp"

#include "edsw/errors.hpp"

#include <cctype>
#include <set>

namespace edsw {

namespace {

bool valid_name(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0]))))
        return false;
    for (char ch : s)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
            return false;
    return true;
}

}  // namespace

ChartPtr Chart::make(std::vector<std::string> coords, std::vector<std::string> params) {
    if (coords.empty())
        throw Error("chart needs at least one coordinate");
    std::vector<std::string> names = coords;
    names.insert(names.end(), params.begin(), params.end());
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!valid_name(n))
            throw Error("invalid symbol name '" + n + "'");
        if (!seen.insert(n).second)
            throw Error("duplicate symbol name '" + n + "'");
    }
    return ChartPtr(new Chart(std::move(names), coords.size()));
}

std::vector<std::string> Chart::coords() const {
    return {names_.begin(), names_.begin() + static_cast<std::ptrdiff_t>(ncoords_)};
}

std::vector<std::string> Chart::params() const {
    return {names_.begin() + static_cast<std::ptrdiff_t>(ncoords_), names_.end()};
}

std::optional<std::size_t> Chart::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return i;
    return std::nullopt;
}

void ensure_same_chart(const ChartPtr& a, const ChartPtr& b) {
    if (a.get() == b.get())
        return;
    if (!a || !b || !a->same(*b))
        throw Error("operands live on different charts");
}

}  // namespace edsw
