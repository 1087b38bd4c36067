// Acceptance suite. Each criterion prints one line:
//
//   [PASS] AC<n> <title>: <evidence>
//   [FAIL] AC<n> <title>: <what went wrong>
//
// The process exits non-zero if any criterion fails.

#include "pcm/app.hpp"
#include "pcm/config.hpp"
#include "pcm/env_file.hpp"
#include "pcm/fixture_provider.hpp"
#include "pcm/matcher.hpp"

#include "oracle.hpp"
#include "process.hpp"
#include "samples.hpp"
#include "scenario.hpp"
#include "temp_dir.hpp"

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace pcm;
using pcm::test::TempDir;
using pcm::test::readFile;
using pcm::test::writeFile;

namespace
{

struct Verdict
{
    bool pass = false;
    std::string detail;
};

Verdict fail(std::string why)
{
    return {false, std::move(why)};
}

// ---------------------------------------------------------------- AC1

Verdict exampleEndToEnd()
{
    TempDir dir;
    writeFile(dir / "cfg" / "plat_config_example.json", test::exampleConfig);
    writeFile(dir / "fixture.json", test::exampleFixture);
    auto env = dir / "etc" / "nvidia-pcm";
    std::filesystem::create_directories(env.parent_path());

    auto r = test::runProcess({PCM_BINARY, "--config-dir",
                               (dir / "cfg").string(), "--env-file",
                               env.string(), "--fixture",
                               (dir / "fixture.json").string()});
    if (r.exitCode != 0)
    {
        return fail("exit " + std::to_string(r.exitCode) + ": " + r.err);
    }
    auto bytes = readFile(env);
    if (bytes != test::exampleEnv)
    {
        return fail("env bytes differ: " + bytes);
    }
    auto mode = test::permissionBits(env);
    if (mode != 0664)
    {
        std::ostringstream m;
        m << std::oct << mode;
        return fail("mode " + m.str());
    }
    if (r.elapsed >= std::chrono::seconds(1))
    {
        return fail("runtime " + std::to_string(r.elapsed.count()) + " ms");
    }
    return {true, "exit 0, byte-exact, mode 0664, runtime " +
                      std::to_string(r.elapsed.count()) + " ms"};
}

// ---------------------------------------------------------------- AC2

const std::string fru = "xyz.openbmc_project.FruDevice";
const std::string prop = "PRODUCT_PRODUCT_NAME";

FixtureDocument objectsWith(const std::vector<bool>& matches)
{
    FixtureDocument d;
    for (std::size_t i = 0; i < matches.size(); ++i)
    {
        d.services[fru]["/xyz/openbmc_project/FruDevice/obj" +
                        std::to_string(i)][fru][prop] =
            matches[i] ? "expected" : "other";
    }
    return d;
}

// Truth tables written out by hand rather than computed.
bool tableAnd(const std::vector<bool>& v)
{
    switch (v.size())
    {
        case 0:
            return true;
        case 1:
            return v[0];
        case 2:
            return v[0] && v[1];
        case 3:
            return v[0] && v[1] && v[2];
        default:
            return v[0] && v[1] && v[2] && v[3];
    }
}

bool tableOr(const std::vector<bool>& v)
{
    switch (v.size())
    {
        case 0:
            return false;
        case 1:
            return v[0];
        case 2:
            return v[0] || v[1];
        case 3:
            return v[0] || v[1] || v[2];
        default:
            return v[0] || v[1] || v[2] || v[3];
    }
}

std::vector<bool> bits(int mask, int n)
{
    std::vector<bool> out;
    for (int i = 0; i < n; ++i)
    {
        out.push_back((mask >> i) & 1);
    }
    return out;
}

Verdict ruleSemantics()
{
    using config::Rule;
    int cases = 0;
    int agree = 0;
    std::string firstMismatch;

    for (int n = 0; n <= 4; ++n)
    {
        for (int mask = 0; mask < (1 << n); ++mask)
        {
            auto obs = bits(mask, n);
            FixtureProvider provider(objectsWith(obs));
            for (auto rule : {Rule::MatchAll, Rule::MatchOne})
            {
                // Empty objects: MatchAll has nothing to check and fails.
                bool expected = rule == Rule::MatchAll
                                    ? (n > 0 && tableAnd(obs))
                                    : tableOr(obs);
                config::Check check{rule, {}, fru, prop, PropertyValue("expected")};
                bool got = matcher::evaluateCheck(check, provider,
                                                  matcher::RecognizedServices{})
                               .passed;
                ++cases;
                if (got == expected)
                {
                    ++agree;
                }
                else if (firstMismatch.empty())
                {
                    firstMismatch = "check " + std::string(toString(rule)) +
                                    " n=" + std::to_string(n) +
                                    " mask=" + std::to_string(mask);
                }
            }
        }
    }

    FixtureProvider one(objectsWith({true}));
    for (int n = 0; n <= 3; ++n)
    {
        for (int mask = 0; mask < (1 << n); ++mask)
        {
            auto results = bits(mask, n);
            for (auto rule : {Rule::MatchAll, Rule::MatchOne})
            {
                config::PlatformConfig c;
                c.name = "T";
                c.rule = rule;
                for (bool r : results)
                {
                    c.checks.push_back({Rule::MatchAll, {}, fru, prop,
                                        PropertyValue(r ? "expected" : "x")});
                }
                // No checks at all: the config matches under either rule.
                bool expected = n == 0 ? true
                                : rule == Rule::MatchAll ? tableAnd(results)
                                                         : tableOr(results);
                bool got = matcher::evaluateConfig(c, one,
                                                   matcher::RecognizedServices{})
                               .passed;
                ++cases;
                if (got == expected)
                {
                    ++agree;
                }
                else if (firstMismatch.empty())
                {
                    firstMismatch = "config " + std::string(toString(rule)) +
                                    " n=" + std::to_string(n) +
                                    " mask=" + std::to_string(mask);
                }
            }
        }
    }

    std::string summary = std::to_string(agree) + "/" + std::to_string(cases) +
                          " cases agree";
    if (agree != cases)
    {
        return fail(summary + ", first mismatch " + firstMismatch);
    }
    return {true, summary};
}

// ---------------------------------------------------------------- AC3

Verdict firstMatch()
{
    std::mt19937_64 rng(0xac3);
    const auto recognized = test::defaultRecognized();
    const int total = 1000;
    int violations = 0;
    std::map<std::string, int> kinds;
    std::string first;
    for (int i = 0; i < total; ++i)
    {
        auto s = test::randomScenario(rng);
        TempDir dir;
        s.writeTo(dir / "cfg", dir / "fixture.json");

        auto directory = config::loadDirectory(dir / "cfg");
        auto provider = loadFixture(dir / "fixture.json");
        auto got = matcher::selectPlatform(
            directory, provider, matcher::RecognizedServices(recognized));
        auto want = s.oracle(recognized);

        bool ok = static_cast<int>(got.kind) == static_cast<int>(want.kind) &&
                  got.matchedIndex == want.index &&
                  (got.config ? std::optional(got.config->name)
                              : std::nullopt) == want.name;
        ++kinds[std::string(matcher::toString(got.kind))];
        if (!ok)
        {
            ++violations;
            if (first.empty())
            {
                first = "pair " + std::to_string(i);
            }
        }
    }
    std::string summary = std::to_string(total) + " pairs, " +
                          std::to_string(violations) + " violations (matched " +
                          std::to_string(kinds["matched"]) + ", fallback " +
                          std::to_string(kinds["default-fallback"]) +
                          ", no-match " + std::to_string(kinds["no-match"]) + ")";
    if (violations != 0)
    {
        return fail(summary + ", first at " + first);
    }
    return {true, summary};
}

// ---------------------------------------------------------------- AC4

class CountingFactory
{
  public:
    app::ProviderFactory make()
    {
        auto calls = calls_;
        return [calls](const app::RunOptions& o)
                   -> std::unique_ptr<PropertyProvider> {
            struct Tally final : PropertyProvider
            {
                std::unique_ptr<PropertyProvider> inner;
                std::shared_ptr<int> n;
                SubTree getSubTree(const std::string& i) override
                {
                    ++*n;
                    return inner->getSubTree(i);
                }
                PropertyValue getProperty(const std::string& s,
                                          const std::string& p,
                                          const std::string& i,
                                          const std::string& q) override
                {
                    ++*n;
                    return inner->getProperty(s, p, i, q);
                }
                std::string_view kind() const override
                {
                    return inner->kind();
                }
            };
            auto t = std::make_unique<Tally>();
            t->inner = app::makeProvider(o);
            t->n = calls;
            return t;
        };
    }

    int calls() const
    {
        return *calls_;
    }

    void reset()
    {
        *calls_ = 0;
    }

  private:
    std::shared_ptr<int> calls_ = std::make_shared<int>(0);
};

Verdict skipChecksEquivalence()
{
    std::mt19937_64 rng(0xac4);
    const int wanted = 100;
    int scenarios = 0;
    int violations = 0;
    std::string first;
    for (int attempt = 0; attempt < 5000 && scenarios < wanted; ++attempt)
    {
        auto s = test::randomScenario(rng);
        if (s.oracle(test::defaultRecognized()).kind !=
            test::OracleSelection::Kind::Matched)
        {
            continue;
        }
        ++scenarios;
        TempDir dir;
        s.writeTo(dir / "cfg", dir / "fixture.json");

        app::RunOptions options;
        options.configDir = dir / "cfg";
        options.fixture = dir / "fixture.json";
        options.envFile = dir / "env";
        std::ostringstream err;
        std::ostringstream out;
        Logger log(err);
        CountingFactory counting;
        app::Context context{log, out, counting.make()};

        auto detect = app::run(options, context);
        auto before = readFile(options.envFile);
        counting.reset();
        options.mode = app::Mode::SkipChecks;
        auto skip = app::run(options, context);
        auto after = readFile(options.envFile);

        if (detect != app::ExitCode::Success || skip != app::ExitCode::Success ||
            before != after || counting.calls() != 0)
        {
            ++violations;
            if (first.empty())
            {
                first = "scenario " + std::to_string(scenarios) + " calls=" +
                        std::to_string(counting.calls());
            }
        }
    }
    std::string summary = std::to_string(scenarios) + " matched scenarios, " +
                          std::to_string(violations) + " violations";
    if (scenarios < wanted)
    {
        return fail(summary + " (too few scenarios generated)");
    }
    if (violations != 0)
    {
        return fail(summary + ", first " + first);
    }
    return {true, summary + ", zero provider calls on every skip-checks run"};
}

// ---------------------------------------------------------------- AC5

// One platform variant: its distinguishing FRU values and its outputs.
struct Variant
{
    std::string key;
    std::string product;
    std::string board;
    int gpus;
};

nlohmann::ordered_json variantConfig(const Variant& v)
{
    nlohmann::ordered_json c;
    c["Name"] = v.product + " Platform";
    c["rule"] = "MatchAll";
    c["Checks"] = nlohmann::ordered_json::array();
    c["Checks"].push_back({{"rule", "MatchAll"},
                           {"objects", nlohmann::ordered_json::array()},
                           {"interface", fru},
                           {"property", "PRODUCT_PRODUCT_NAME"},
                           {"value", v.product}});
    c["Checks"].push_back(
        {{"rule", "MatchOne"},
         {"objects", {"/xyz/openbmc_project/FruDevice/baseboard"}},
         {"interface", fru},
         {"property", "BOARD_PART_NUMBER"},
         {"value", v.board}});
    const std::string base = "/usr/share/platforms/" + v.key;
    c["Actions"] = nlohmann::ordered_json::array();
    c["Actions"].push_back(
        {{"variables",
          {"CONFIG_MANIFEST=" + base + "/manifest.json",
           "CONFIG_PROFILE=" + base + "/profile.json",
           "GPU_COUNT=" + std::to_string(v.gpus)}}});
    c["Actions"].push_back(
        {{"variables", {"TELEMETRY_CONFIG=" + base + "/telemetry.json",
                        "FAN_TABLE=" + base + "/fans.json"}}});
    return c;
}

nlohmann::ordered_json variantFixture(const Variant& v)
{
    nlohmann::ordered_json services;
    auto& objects = services[fru];
    objects["/xyz/openbmc_project/FruDevice/baseboard"][fru] = {
        {"PRODUCT_PRODUCT_NAME", v.product},
        {"BOARD_PART_NUMBER", v.board},
        {"BOARD_SERIAL_NUMBER", "SN-" + v.key}};
    for (int g = 0; g < v.gpus; ++g)
    {
        objects["/xyz/openbmc_project/FruDevice/gpu" + std::to_string(g)][fru] =
            {{"PRODUCT_PRODUCT_NAME", v.product}};
    }
    return {{"services", services}};
}

// path -> digest for every file under `root`.
std::map<std::string, std::string> manifest(const std::filesystem::path& root)
{
    std::map<std::string, std::string> m;
    for (const auto& e : std::filesystem::recursive_directory_iterator(root))
    {
        if (e.is_regular_file())
        {
            m[std::filesystem::relative(e.path(), root).string()] =
                env::digest(readFile(e.path()));
        }
    }
    return m;
}

struct Row
{
    std::string name;
    std::string provenance;
    std::string digest;
};

std::map<std::string, Row> parseTable(const std::string& out)
{
    std::map<std::string, Row> rows;
    std::istringstream in(out);
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line))
    {
        std::vector<std::string> cols;
        std::istringstream fields(line);
        std::string f;
        while (std::getline(fields, f, '\t'))
        {
            cols.push_back(f);
        }
        if (cols.size() == 4)
        {
            rows[cols[0]] = {cols[1], cols[2], cols[3]};
        }
    }
    return rows;
}

std::string checkFleet(const std::map<std::string, Row>& rows,
                       std::size_t expected)
{
    if (rows.size() != expected)
    {
        return "expected " + std::to_string(expected) + " rows, got " +
               std::to_string(rows.size());
    }
    std::set<std::string> names;
    std::set<std::string> digests;
    for (const auto& [fixture, row] : rows)
    {
        if (row.provenance != "matched")
        {
            return fixture + " resolved by " + row.provenance;
        }
        names.insert(row.name);
        digests.insert(row.digest);
    }
    if (names.size() != expected || digests.size() != expected)
    {
        return "names/digests not distinct";
    }
    return {};
}

Verdict singleImage()
{
    const std::vector<Variant> variants = {
        {"alpha", "Alpha Compute Tray", "699-21010-0200", 4},
        {"bravo", "Bravo Compute Tray", "699-21010-0300", 8},
        {"charlie", "Charlie Switch Tray", "699-24610-0100", 0},
        {"delta", "Delta Compute Tray", "699-21010-0400", 8},
    };

    TempDir dir;
    // The image: binary plus config directory.
    auto image = dir / "image";
    auto configDir = image / "platform-configuration-files";
    std::filesystem::create_directories(configDir);
    std::filesystem::copy_file(PCM_BINARY, image / "pcm");
    auto fleet = dir / "fleet";

    std::size_t maxLines = 0;
    std::size_t minLines = SIZE_MAX;
    auto addVariant = [&](const Variant& v) {
        auto text = variantConfig(v).dump(4) + "\n";
        auto lines = static_cast<std::size_t>(
            std::count(text.begin(), text.end(), '\n'));
        maxLines = std::max(maxLines, lines);
        minLines = std::min(minLines, lines);
        writeFile(configDir / ("plat_config_" + v.key + ".json"), text);
    };
    auto addHardware = [&](const Variant& v) {
        writeFile(fleet / (v.key + ".json"), variantFixture(v).dump(4) + "\n");
    };
    auto simulate = [&]() {
        return test::runProcess({(image / "pcm").string(), "--config-dir",
                                 configDir.string(), "simulate",
                                 fleet.string()});
    };

    for (std::size_t i = 0; i < 3; ++i)
    {
        addVariant(variants[i]);
        addHardware(variants[i]);
    }
    auto r3 = simulate();
    if (r3.exitCode != 0)
    {
        return fail("3-variant simulate exit " + std::to_string(r3.exitCode) +
                    ": " + r3.err);
    }
    if (auto why = checkFleet(parseTable(r3.out), 3); !why.empty())
    {
        return fail("3 variants: " + why);
    }

    // New hardware appears: unresolved until its config is added.
    addHardware(variants[3]);
    auto unresolved = simulate();
    if (unresolved.exitCode != 2)
    {
        return fail("4th variant resolved before its config existed");
    }

    const auto before = manifest(image);
    addVariant(variants[3]);
    const auto after = manifest(image);

    std::vector<std::string> added;
    std::vector<std::string> changed;
    for (const auto& [path, digest] : after)
    {
        auto it = before.find(path);
        if (it == before.end())
        {
            added.push_back(path);
        }
        else if (it->second != digest)
        {
            changed.push_back(path);
        }
    }
    for (const auto& [path, digest] : before)
    {
        if (!after.count(path))
        {
            changed.push_back(path + " (removed)");
        }
    }
    if (added.size() != 1 || !changed.empty() ||
        !added[0].ends_with(".json"))
    {
        return fail("manifest diff: " + std::to_string(added.size()) +
                    " added, " + std::to_string(changed.size()) + " changed");
    }

    auto r4 = simulate();
    if (r4.exitCode != 0)
    {
        return fail("4-variant simulate exit " + std::to_string(r4.exitCode));
    }
    if (auto why = checkFleet(parseTable(r4.out), 4); !why.empty())
    {
        return fail("4 variants: " + why);
    }
    return {true, "3 then 4 variants resolve to distinct platforms and digests; "
                  "configs " +
                      std::to_string(minLines) + "-" +
                      std::to_string(maxLines) +
                      " lines; 4th variant added exactly one file (" +
                      added[0] + ")"};
}

// ---------------------------------------------------------------- AC6

Verdict fallback()
{
    std::mt19937_64 rng(0xac6);
    const auto recognized = test::defaultRecognized();
    int fixtures = 0;
    int violations = 0;
    std::string first;
    for (int attempt = 0; attempt < 5000 && fixtures < 200; ++attempt)
    {
        auto s = test::randomScenario(rng, {.defaultProbability = 0});
        if (s.oracle(recognized).kind != test::OracleSelection::Kind::NoMatch)
        {
            continue;
        }
        ++fixtures;
        TempDir dir;
        s.writeTo(dir / "cfg", dir / "fixture.json");
        std::vector<std::string> args{PCM_BINARY,
                                      "--config-dir",
                                      (dir / "cfg").string(),
                                      "--env-file",
                                      (dir / "env").string(),
                                      "--fixture",
                                      (dir / "fixture.json").string()};

        bool ok = true;
        // Without a default: exit 2 and no env file.
        auto absent = fixtures <= 40 ? test::runProcess(args).exitCode : -1;
        if (fixtures > 40)
        {
            // In-process for the remainder; same code path minus exec.
            app::RunOptions o;
            o.configDir = dir / "cfg";
            o.fixture = dir / "fixture.json";
            o.envFile = dir / "env";
            std::ostringstream err;
            std::ostringstream out;
            Logger log(err);
            app::Context context{log, out};
            absent = static_cast<int>(app::run(o, context));
        }
        ok = ok && absent == 2 && !std::filesystem::exists(dir / "env");

        // With a default: exit 0 and NAME=<default name>.
        writeFile(dir / "cfg" / "plat_config_default.json",
                  test::defaultConfig);
        auto present = test::runProcess(args);
        ok = ok && present.exitCode == 0 &&
             env::readEnvName(dir / "env") == "Generic Platform";

        if (!ok)
        {
            ++violations;
            if (first.empty())
            {
                first = "fixture " + std::to_string(fixtures);
            }
        }
    }
    std::string summary = std::to_string(fixtures) +
                          " unmatched fixtures, " + std::to_string(violations) +
                          " violations";
    if (violations != 0 || fixtures < 200)
    {
        return fail(summary + (first.empty() ? "" : ", first " + first));
    }
    return {true, summary + " (default: exit 0 + NAME; none: exit 2, no file)"};
}

// ---------------------------------------------------------------- AC7

Verdict atomicity()
{
    std::mt19937_64 rng(0xac7);
    const int wanted = 60;
    int crashes = 0;
    int violations = 0;
    std::string first;
    const std::string oldBytes = "NAME=Old Platform\nCONFIG_MANIFEST=/old\n";

    while (crashes < wanted)
    {
        auto c = test::randomConfig(rng, "New Platform", 0);
        c.actions.push_back({{{"CONFIG_MANIFEST", "/usr/share/new/manifest.json"},
                              {"CONFIG_PROFILE", "/usr/share/new/profile.json"}}});
        const auto newBytes = env::render(c.name, c.actions);
        const int lines =
            static_cast<int>(std::count(newBytes.begin(), newBytes.end(), '\n'));
        // Stages before the rename: TempCreated, one per line, Synced,
        // PermissionsSet, BeforeRename.
        const int stages = lines + 4;
        const int crashAt = 1 + static_cast<int>(rng() % stages);
        const bool hadOld = rng() % 2 == 0;

        TempDir dir;
        auto path = dir / "nvidia-pcm";
        if (hadOld)
        {
            writeFile(path, oldBytes);
        }
        pid_t pid = ::fork();
        if (pid < 0)
        {
            return fail("fork failed");
        }
        if (pid == 0)
        {
            int seen = 0;
            try
            {
                env::writeEnvFile(c.name, c.actions, path, [&](env::WriteStage) {
                    if (++seen == crashAt)
                    {
                        ::kill(::getpid(), SIGKILL);
                    }
                });
            }
            catch (...)
            {}
            ::_exit(0);
        }
        int status = 0;
        ::waitpid(pid, &status, 0);
        if (!WIFSIGNALED(status))
        {
            return fail("writer was not killed at stage " +
                        std::to_string(crashAt));
        }
        ++crashes;

        bool ok = hadOld ? std::filesystem::exists(path) &&
                               readFile(path) == oldBytes
                         : !std::filesystem::exists(path);
        if (!ok)
        {
            ++violations;
            if (first.empty())
            {
                first = "stage " + std::to_string(crashAt);
            }
        }
    }
    std::string summary = std::to_string(crashes) + " injected crashes, " +
                          std::to_string(violations) +
                          " truncated or mixed files";
    if (violations != 0)
    {
        return fail(summary + ", first at " + first);
    }
    return {true, summary};
}

// ---------------------------------------------------------------- AC8

Verdict validate()
{
    TempDir dir;
    auto cfg = dir / "cfg";
    writeFile(cfg / "plat_config_a_any.json",
              R"({"Name":"Any","Checks":[],"Actions":[]})");
    writeFile(cfg / "plat_config_b_example.json", test::exampleConfig);
    auto hazard = test::runProcess({PCM_BINARY, "validate", "--config-dir",
                                    cfg.string()});
    if (hazard.exitCode != 6)
    {
        return fail("hazard directory exit " + std::to_string(hazard.exitCode));
    }
    if (hazard.err.find("shadowing-hazard") == std::string::npos)
    {
        return fail("hazard not reported");
    }

    std::filesystem::remove(cfg / "plat_config_a_any.json");
    writeFile(cfg / "plat_config_default.json", test::defaultConfig);
    auto clean = test::runProcess({PCM_BINARY, "validate", "--config-dir",
                                   cfg.string()});
    if (clean.exitCode != 0)
    {
        return fail("clean directory exit " + std::to_string(clean.exitCode));
    }
    return {true, "shadowing hazard exit 6, clean directory exit 0"};
}

} // namespace

int main()
{
    struct Criterion
    {
        const char* id;
        const char* title;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria = {
        {"AC1", "example end-to-end", exampleEndToEnd},
        {"AC2", "rule semantics truth tables", ruleSemantics},
        {"AC3", "first-match property", firstMatch},
        {"AC4", "skip-checks equivalence", skipChecksEquivalence},
        {"AC5", "single-image fleet simulation", singleImage},
        {"AC6", "default fallback", fallback},
        {"AC7", "atomic write under crashes", atomicity},
        {"AC8", "validate shadowing hazard", validate},
    };

    int failures = 0;
    for (const auto& c : criteria)
    {
        Verdict v;
        try
        {
            v = c.run();
        }
        catch (const std::exception& e)
        {
            v = fail(std::string("exception: ") + e.what());
        }
        failures += v.pass ? 0 : 1;
        std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title
                  << ": " << v.detail << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size()
              << " acceptance criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
