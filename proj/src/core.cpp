#include "core.hpp"

#include <algorithm>
#include <string>

#include "error.hpp"

namespace smf {

namespace {

void check_permutation(std::span<const int> list, int n, const char* what, int owner) {
    if (static_cast<int>(list.size()) != n) {
        fail(ErrorCode::InvalidInput, std::string(what) + " " + std::to_string(owner + 1) + " has " +
                                          std::to_string(list.size()) + " entries, expected " + std::to_string(n));
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int x : list) {
        if (x < 0 || x >= n || seen[x]) {
            fail(ErrorCode::InvalidInput,
                 std::string(what) + " " + std::to_string(owner + 1) + " is not a permutation of 1.." + std::to_string(n));
        }
        seen[x] = 1;
    }
}

}  // namespace

PreferenceProfile::PreferenceProfile(const std::vector<std::vector<int>>& men_prefs,
                                     const std::vector<std::vector<int>>& women_prefs) {
    const auto n = static_cast<int>(men_prefs.size());
    if (n < 1) fail(ErrorCode::InvalidInput, "profile must have at least one agent per side");
    if (static_cast<int>(women_prefs.size()) != n) {
        fail(ErrorCode::InvalidInput, "unbalanced market: " + std::to_string(n) + " men but " +
                                          std::to_string(women_prefs.size()) + " women");
    }
    n_ = n;
    men_.reserve(static_cast<std::size_t>(n) * n);
    women_.reserve(static_cast<std::size_t>(n) * n);
    for (int m = 0; m < n; ++m) {
        check_permutation(men_prefs[m], n, "list of man", m);
        men_.insert(men_.end(), men_prefs[m].begin(), men_prefs[m].end());
    }
    for (int w = 0; w < n; ++w) {
        check_permutation(women_prefs[w], n, "list of woman", w);
        women_.insert(women_.end(), women_prefs[w].begin(), women_prefs[w].end());
    }
    build_positions();
}

PreferenceProfile PreferenceProfile::identity(int n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[i] = i;
    std::vector<std::vector<int>> lists(static_cast<std::size_t>(n), order);
    return PreferenceProfile(lists, lists);
}

void PreferenceProfile::build_positions() {
    man_pos_.assign(men_.size(), 0);
    woman_pos_.assign(women_.size(), 0);
    for (int a = 0; a < n_; ++a) {
        for (int p = 0; p < n_; ++p) {
            man_pos_[row(a) + men_[row(a) + p]] = p;
            woman_pos_[row(a) + women_[row(a) + p]] = p;
        }
    }
}

PreferenceProfile PreferenceProfile::swapped() const {
    PreferenceProfile out;
    out.n_ = n_;
    out.men_ = women_;
    out.women_ = men_;
    out.man_pos_ = woman_pos_;
    out.woman_pos_ = man_pos_;
    return out;
}

std::vector<std::vector<int>> PreferenceProfile::men_prefs() const {
    std::vector<std::vector<int>> out;
    out.reserve(n_);
    for (int m = 0; m < n_; ++m) out.emplace_back(man_list(m).begin(), man_list(m).end());
    return out;
}

std::vector<std::vector<int>> PreferenceProfile::women_prefs() const {
    std::vector<std::vector<int>> out;
    out.reserve(n_);
    for (int w = 0; w < n_; ++w) out.emplace_back(woman_list(w).begin(), woman_list(w).end());
    return out;
}

int rank(const PreferenceProfile& profile, Agent of, Agent in_list_of) {
    const int n = profile.size();
    if (of.side == in_list_of.side) fail(ErrorCode::InvalidAgent, "rank query needs agents from opposite sides");
    if (of.index < 0 || of.index >= n || in_list_of.index < 0 || in_list_of.index >= n) {
        fail(ErrorCode::InvalidAgent, "agent index out of range 1.." + std::to_string(n));
    }
    if (in_list_of.side == Side::Men) return profile.man_pos(in_list_of.index, of.index) + 1;
    return profile.woman_pos(in_list_of.index, of.index) + 1;
}

Matching::Matching(std::vector<int> partner_of_man) : wife_(std::move(partner_of_man)) {
    const auto n = static_cast<int>(wife_.size());
    husband_.assign(wife_.size(), -1);
    for (int m = 0; m < n; ++m) {
        const int w = wife_[m];
        if (w < 0 || w >= n || husband_[w] != -1) {
            fail(ErrorCode::InvalidMatching, "partner list is not a permutation of 1.." + std::to_string(n));
        }
        husband_[w] = m;
    }
}

Matching Matching::identity(int n) {
    std::vector<int> wives(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) wives[i] = i;
    return Matching(std::move(wives));
}

Matching Matching::swapped() const {
    Matching out;
    out.wife_ = husband_;
    out.husband_ = wife_;
    return out;
}

namespace {

void check_shape(const PreferenceProfile& profile, const Matching& mu) {
    if (mu.size() != profile.size()) {
        fail(ErrorCode::InvalidMatching, "matching covers " + std::to_string(mu.size()) + " men, profile has " +
                                             std::to_string(profile.size()));
    }
}

}  // namespace

std::vector<ManWomanPair> find_blocking_pairs(const PreferenceProfile& profile, const Matching& mu) {
    check_shape(profile, mu);
    std::vector<ManWomanPair> out;
    const int n = profile.size();
    for (int m = 0; m < n; ++m) {
        const auto list = profile.man_list(m);
        const int own = profile.man_pos(m, mu.partner_of_man(m));
        for (int p = 0; p < own; ++p) {
            const int w = list[p];
            if (profile.woman_prefers(w, m, mu.partner_of_woman(w))) out.push_back({m, w});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_stable(const PreferenceProfile& profile, const Matching& mu) {
    check_shape(profile, mu);
    const int n = profile.size();
    for (int m = 0; m < n; ++m) {
        const auto list = profile.man_list(m);
        const int own = profile.man_pos(m, mu.partner_of_man(m));
        for (int p = 0; p < own; ++p) {
            const int w = list[p];
            if (profile.woman_prefers(w, m, mu.partner_of_woman(w))) return false;
        }
    }
    return true;
}

WelfareScores welfare(const PreferenceProfile& profile, const Matching& mu) {
    check_shape(profile, mu);
    WelfareScores s;
    for (int m = 0; m < profile.size(); ++m) {
        const int w = mu.partner_of_man(m);
        s.s_m += profile.man_pos(m, w) + 1;
        s.s_w += profile.woman_pos(w, m) + 1;
    }
    return s;
}

}  // namespace smf
