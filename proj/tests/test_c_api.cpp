#include <gtest/gtest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "smfair/smfair.h"

namespace {

const int32_t kMen[25] = {2, 4, 5, 1, 3, 3, 2, 4, 1, 5, 1, 5, 4, 3, 2, 4, 2, 3, 1, 5, 2, 3, 5, 1, 4};
const int32_t kWomen[25] = {4, 2, 1, 5, 3, 2, 4, 1, 5, 3, 4, 2, 1, 3, 5, 2, 1, 4, 5, 3, 1, 4, 2, 3, 5};

struct Ex5 {
    smf_profile* p = nullptr;
    Ex5() { EXPECT_EQ(smf_profile_create(5, kMen, kWomen, &p), SMF_OK); }
    ~Ex5() { smf_profile_destroy(p); }
};

}  // namespace

TEST(CApi, DeferredAcceptance) {
    Ex5 ex;
    std::vector<int32_t> mu(5);
    smf_solve_result r{};
    ASSERT_EQ(smf_deferred_acceptance(ex.p, SMF_SIDE_MEN, mu.data(), &r), SMF_OK);
    EXPECT_EQ(mu, (std::vector<int32_t>{2, 3, 1, 4, 5}));
    EXPECT_EQ(r.welfare.s_m, 7);
    EXPECT_EQ(r.welfare.s_w, 18);
    EXPECT_EQ(r.proposals, 7u);
    ASSERT_EQ(smf_deferred_acceptance(ex.p, SMF_SIDE_WOMEN, mu.data(), &r), SMF_OK);
    EXPECT_EQ(mu, (std::vector<int32_t>{4, 2, 5, 3, 1}));
    EXPECT_EQ(r.welfare.cost, 1);

    ASSERT_EQ(smf_da_star(ex.p, 0.5, 0.7, mu.data(), &r), SMF_OK);
    EXPECT_EQ(r.side_used, SMF_SIDE_MEN);
    EXPECT_EQ(smf_da_star(ex.p, 0.5, 7.0, mu.data(), &r), SMF_ERR_INVALID_ARGUMENT);
    EXPECT_NE(std::string(smf_last_error()), "");
}

TEST(CApi, ErrorsCarryCodesAndMessages) {
    smf_profile* p = nullptr;
    const int32_t bad[4] = {1, 1, 1, 2};
    const int32_t good[4] = {1, 2, 2, 1};
    EXPECT_EQ(smf_profile_create(2, bad, good, &p), SMF_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(p, nullptr);
    EXPECT_EQ(smf_profile_from_string("{", SMF_FORMAT_JSON, &p), SMF_ERR_PARSE);
    EXPECT_EQ(smf_profile_load("/nonexistent/x.json", &p), SMF_ERR_IO);
    EXPECT_STRNE(smf_last_error(), "");

    Ex5 ex;
    int32_t rank = 0;
    EXPECT_EQ(smf_profile_rank(ex.p, SMF_SIDE_MEN, 1, 2, &rank), SMF_OK);
    EXPECT_EQ(rank, 1);
    EXPECT_STREQ(smf_last_error(), "");
    EXPECT_EQ(smf_profile_rank(ex.p, SMF_SIDE_MEN, 9, 2, &rank), SMF_ERR_INVALID_AGENT);

    const int32_t not_perm[5] = {1, 1, 2, 3, 4};
    smf_welfare w{};
    EXPECT_EQ(smf_matching_welfare(ex.p, not_perm, &w), SMF_ERR_INVALID_MATCHING);

    smf_profile* single = nullptr;
    const int32_t one[1] = {1};
    ASSERT_EQ(smf_profile_create(1, one, one, &single), SMF_OK);
    int32_t mu[1];
    EXPECT_EQ(smf_da_star_estimated(single, mu, nullptr), SMF_ERR_ESTIMATION);
    smf_profile_destroy(single);
    EXPECT_STREQ(smf_status_name(SMF_ERR_BUDGET_EXCEEDED), "budget exceeded");
}

TEST(CApi, BlockingPairs) {
    Ex5 ex;
    const int32_t identity[5] = {1, 2, 3, 4, 5};
    size_t count = 0;
    ASSERT_EQ(smf_matching_blocking_pairs(ex.p, identity, nullptr, 0, &count), SMF_OK);
    ASSERT_GT(count, 0u);
    std::vector<int32_t> pairs(2 * count);
    ASSERT_EQ(smf_matching_blocking_pairs(ex.p, identity, pairs.data(), count, &count), SMF_OK);
    EXPECT_EQ(pairs[0], 1);

    const int32_t stable[5] = {4, 2, 5, 3, 1};
    ASSERT_EQ(smf_matching_blocking_pairs(ex.p, stable, nullptr, 0, &count), SMF_OK);
    EXPECT_EQ(count, 0u);
}

TEST(CApi, Lattice) {
    Ex5 ex;
    smf_lattice* lat = nullptr;
    ASSERT_EQ(smf_lattice_enumerate(ex.p, nullptr, &lat), SMF_OK);
    EXPECT_EQ(smf_lattice_size(lat), 6u);
    EXPECT_TRUE(smf_lattice_complete(lat));
    smf_lattice_stats s{};
    ASSERT_EQ(smf_lattice_stats_get(lat, &s), SMF_OK);
    EXPECT_EQ(s.r, 3);
    EXPECT_EQ(s.h, 2);
    EXPECT_EQ(s.width, 2);
    EXPECT_TRUE(s.downset_check);
    EXPECT_EQ(s.max_downsets_bound, 6u);

    std::vector<int32_t> mu(5);
    ASSERT_EQ(smf_lattice_matching(lat, 0, mu.data()), SMF_OK);
    EXPECT_EQ(mu, (std::vector<int32_t>{2, 3, 1, 4, 5}));
    EXPECT_EQ(smf_lattice_matching(lat, 6, mu.data()), SMF_ERR_INVALID_ARGUMENT);

    char* json = nullptr;
    ASSERT_EQ(smf_lattice_to_json(lat, &json), SMF_OK);
    EXPECT_NE(std::string(json).find("\"downset_check\": true"), std::string::npos);
    smf_free_string(json);
    char* dot = nullptr;
    ASSERT_EQ(smf_lattice_to_dot(lat, &dot), SMF_OK);
    EXPECT_EQ(std::string(dot).rfind("digraph", 0), 0u);
    smf_free_string(dot);
    smf_lattice_destroy(lat);
}

TEST(CApi, BudgetExceededStillReturnsTheLattice) {
    smf_profile* p = nullptr;
    ASSERT_EQ(smf_profile_generate(80, 1.0, 1.0, 3, 0, &p), SMF_OK);
    smf_lattice_options opts = smf_lattice_options_default();
    opts.max_matchings = 2;
    smf_lattice* lat = nullptr;
    ASSERT_EQ(smf_lattice_enumerate(p, &opts, &lat), SMF_ERR_BUDGET_EXCEEDED);
    ASSERT_NE(lat, nullptr);
    EXPECT_FALSE(smf_lattice_complete(lat));
    EXPECT_EQ(smf_lattice_size(lat), 2u);
    smf_lattice_destroy(lat);
    smf_profile_destroy(p);
}

TEST(CApi, FairnessAndClassification) {
    Ex5 ex;
    smf_classification c{};
    ASSERT_EQ(smf_classify(ex.p, &c), SMF_OK);
    EXPECT_EQ(c.lemma_case, SMF_CASE_INTERIOR);
    EXPECT_EQ(c.gap_m, 6);
    EXPECT_EQ(c.gap_w, 6);

    std::vector<int32_t> mu(5);
    smf_search_result r{};
    smf_fair_options opts = smf_fair_options_default();
    for (smf_fair_method m : {SMF_FAIR_EXHAUSTIVE, SMF_FAIR_IBILS, SMF_FAIR_DA_STAR}) {
        opts.method = m;
        ASSERT_EQ(smf_fair_search(ex.p, &opts, mu.data(), &r), SMF_OK);
        EXPECT_EQ(r.welfare.cost, 1);
        EXPECT_EQ(mu, (std::vector<int32_t>{4, 2, 5, 3, 1}));
    }
    opts.method = SMF_FAIR_EXHAUSTIVE;
    ASSERT_EQ(smf_fair_search(ex.p, &opts, mu.data(), &r), SMF_OK);
    EXPECT_TRUE(r.optimal);
}

TEST(CApi, SerialisationAndMetadata) {
    smf_profile* p = nullptr;
    ASSERT_EQ(smf_profile_generate(7, 0.3, 0.6, 11, 2, &p), SMF_OK);
    smf_metadata m{};
    ASSERT_EQ(smf_profile_metadata(p, &m), SMF_OK);
    EXPECT_TRUE(m.has_seed);
    EXPECT_EQ(m.seed, 11u);
    EXPECT_EQ(m.stream, 2u);
    EXPECT_DOUBLE_EQ(m.phi_w, 0.6);

    char* soc = nullptr;
    ASSERT_EQ(smf_profile_to_string(p, SMF_FORMAT_SOC, &soc), SMF_OK);
    smf_profile* q = nullptr;
    ASSERT_EQ(smf_profile_from_string(soc, SMF_FORMAT_SOC, &q), SMF_OK);
    char* a = nullptr;
    char* b = nullptr;
    ASSERT_EQ(smf_profile_to_string(p, SMF_FORMAT_JSON, &a), SMF_OK);
    ASSERT_EQ(smf_profile_to_string(q, SMF_FORMAT_JSON, &b), SMF_OK);
    EXPECT_STREQ(a, b);
    std::vector<int32_t> list(7);
    ASSERT_EQ(smf_profile_list(q, SMF_SIDE_WOMEN, 7, list.data()), SMF_OK);
    smf_free_string(soc);
    smf_free_string(a);
    smf_free_string(b);
    smf_profile_destroy(p);
    smf_profile_destroy(q);
}

TEST(CApi, ExperimentWritesOutputs) {
    const auto dir = std::filesystem::temp_directory_path() / "smfair_capi_experiment";
    std::filesystem::remove_all(dir);
    const char* config = R"({"n_values":[8],"phi_grid":[[0.5,0.5],[0.3,0.7]],"instances_per_cell":5,
                             "measurements":["LatticeSize","SexEqualLocation"]})";
    uint64_t last = 0;
    auto progress = [](uint64_t done, uint64_t, void* user) { *static_cast<uint64_t*>(user) = done; };
    smf_experiment_summary s{};
    ASSERT_EQ(smf_experiment_run(config, dir.c_str(), 2, 1, progress, &last, &s), SMF_OK);
    EXPECT_EQ(s.records, 10u);
    EXPECT_EQ(last, 10u);
    EXPECT_GT(s.plots, 0u);
    EXPECT_TRUE(std::filesystem::exists(dir / "records.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "summary.csv"));
    EXPECT_EQ(smf_experiment_validate(R"({"n_values":[8],"phi_grid":[],"measurements":["LatticeSize"]})"),
              SMF_ERR_INVALID_ARGUMENT);
    std::filesystem::remove_all(dir);
}
