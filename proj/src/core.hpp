#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace smf {

enum class Side { Men, Women };

constexpr Side opposite(Side s) { return s == Side::Men ? Side::Women : Side::Men; }

/// An agent on one side of the market; `index` is 0-based.
struct Agent {
    Side side;
    int index;
};

constexpr Agent man(int i) { return {Side::Men, i}; }
constexpr Agent woman(int i) { return {Side::Women, i}; }

/// Complete strict preferences for n men and n women.
///
/// Lists hold 0-based indices of the opposite side, most preferred first.
/// Position tables are built at construction so every rank query is O(1);
/// the object is immutable afterwards.
class PreferenceProfile {
public:
    PreferenceProfile(const std::vector<std::vector<int>>& men_prefs,
                      const std::vector<std::vector<int>>& women_prefs);

    /// Everyone ranks the other side by index.
    static PreferenceProfile identity(int n);

    int size() const { return n_; }

    std::span<const int> man_list(int m) const { return {men_.data() + row(m), static_cast<std::size_t>(n_)}; }
    std::span<const int> woman_list(int w) const { return {women_.data() + row(w), static_cast<std::size_t>(n_)}; }
    std::span<const int> list(Side side, int agent) const {
        return side == Side::Men ? man_list(agent) : woman_list(agent);
    }

    /// 0-based position of woman w in man m's list.
    int man_pos(int m, int w) const { return man_pos_[row(m) + w]; }
    /// 0-based position of man m in woman w's list.
    int woman_pos(int w, int m) const { return woman_pos_[row(w) + m]; }

    bool man_prefers(int m, int a, int b) const { return man_pos(m, a) < man_pos(m, b); }
    bool woman_prefers(int w, int a, int b) const { return woman_pos(w, a) < woman_pos(w, b); }

    /// The same market with the roles of men and women exchanged.
    PreferenceProfile swapped() const;

    std::vector<std::vector<int>> men_prefs() const;
    std::vector<std::vector<int>> women_prefs() const;

    bool operator==(const PreferenceProfile& other) const {
        return n_ == other.n_ && men_ == other.men_ && women_ == other.women_;
    }

private:
    PreferenceProfile() = default;
    std::size_t row(int agent) const { return static_cast<std::size_t>(agent) * static_cast<std::size_t>(n_); }
    void build_positions();

    int n_ = 0;
    std::vector<int> men_;
    std::vector<int> women_;
    std::vector<int> man_pos_;
    std::vector<int> woman_pos_;
};

/// Rank (1-based) of `of` in the preference list of `in_list_of`.
/// Throws ErrorCode::InvalidAgent for out-of-range ids or same-side agents.
int rank(const PreferenceProfile& profile, Agent of, Agent in_list_of);

/// Perfect matching stored as partner_of_man with its inverse.
class Matching {
public:
    Matching() = default;
    explicit Matching(std::vector<int> partner_of_man);

    static Matching identity(int n);

    int size() const { return static_cast<int>(wife_.size()); }
    int partner_of_man(int m) const { return wife_[m]; }
    int partner_of_woman(int w) const { return husband_[w]; }
    std::span<const int> partners_of_men() const { return wife_; }
    std::span<const int> partners_of_women() const { return husband_; }

    /// The matching seen from the other side (partner_of_woman becomes the
    /// primary array); pairs with PreferenceProfile::swapped.
    Matching swapped() const;

    bool operator==(const Matching& other) const { return wife_ == other.wife_; }
    std::strong_ordering operator<=>(const Matching& other) const { return wife_ <=> other.wife_; }

private:
    std::vector<int> wife_;
    std::vector<int> husband_;
};

struct ManWomanPair {
    int man;
    int woman;

    bool operator==(const ManWomanPair&) const = default;
    auto operator<=>(const ManWomanPair&) const = default;
};

struct WelfareScores {
    std::int64_t s_m = 0;
    std::int64_t s_w = 0;

    bool operator==(const WelfareScores&) const = default;
};

/// All (m, w) that strictly prefer each other to their partners in mu,
/// ordered by man then woman.
std::vector<ManWomanPair> find_blocking_pairs(const PreferenceProfile& profile, const Matching& mu);

bool is_stable(const PreferenceProfile& profile, const Matching& mu);

WelfareScores welfare(const PreferenceProfile& profile, const Matching& mu);

inline std::int64_t sex_equality_cost(WelfareScores s) { return s.s_m > s.s_w ? s.s_m - s.s_w : s.s_w - s.s_m; }

inline std::int64_t egalitarian_cost(WelfareScores s) { return s.s_m + s.s_w; }

inline WelfareScores swap_sides(WelfareScores s) { return {s.s_w, s.s_m}; }

}  // namespace smf
