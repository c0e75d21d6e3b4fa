#include "aggrekin/aggrekin.h"

#include <cstring>
#include <string>

#include "../core/config.hpp"
#include "../core/errors.hpp"
#include "../core/runner.hpp"

struct aggrekin_config {
    aggrekin::RunConfig cfg;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

aggrekin_status map_exception()
{
    try {
        throw;
    } catch (const aggrekin::config_error& e) {
        set_error(e.what());
        return AGGREKIN_ERR_CONFIG;
    } catch (const aggrekin::cfl_error& e) {
        set_error(e.what());
        return AGGREKIN_ERR_CFL;
    } catch (const aggrekin::invariant_error& e) {
        set_error(e.what());
        return AGGREKIN_ERR_INVARIANT;
    } catch (const std::exception& e) {
        set_error(e.what());
        return AGGREKIN_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return AGGREKIN_ERR_INTERNAL;
    }
}

size_t copy_out(const std::string& text, char* buf, size_t size)
{
    if (buf && size > 0) {
        const size_t n = std::min(size - 1, text.size());
        std::memcpy(buf, text.data(), n);
        buf[n] = '\0';
    }
    return text.size();
}

} // namespace

extern "C" {

const char* aggrekin_version(void) { return "0.1.0"; }

const char* aggrekin_last_error(void) { return g_last_error.c_str(); }

aggrekin_status aggrekin_config_parse_text(const char* text, aggrekin_config** out)
{
    if (!text || !out) {
        set_error("null argument");
        return AGGREKIN_ERR_PARSE;
    }
    *out = nullptr;
    try {
        auto handle = new aggrekin_config{aggrekin::parse_config(text)};
        *out = handle;
        set_error("");
        return AGGREKIN_OK;
    } catch (const aggrekin::config_error& e) {
        set_error(e.what());
        return AGGREKIN_ERR_PARSE;
    } catch (...) {
        return map_exception();
    }
}

aggrekin_status aggrekin_config_parse_file(const char* path, aggrekin_config** out)
{
    if (!path || !out) {
        set_error("null argument");
        return AGGREKIN_ERR_PARSE;
    }
    *out = nullptr;
    try {
        auto handle = new aggrekin_config{aggrekin::parse_config_file(path)};
        *out = handle;
        set_error("");
        return AGGREKIN_OK;
    } catch (const aggrekin::config_error& e) {
        set_error(e.what());
        return AGGREKIN_ERR_PARSE;
    } catch (...) {
        return map_exception();
    }
}

void aggrekin_config_free(aggrekin_config* cfg) { delete cfg; }

size_t aggrekin_config_describe(const aggrekin_config* cfg, char* buf, size_t size)
{
    if (!cfg) return copy_out("", buf, size);
    return copy_out(aggrekin::config_to_text(cfg->cfg), buf, size);
}

aggrekin_status aggrekin_run(const aggrekin_config* cfg, const char* output_dir)
{
    if (!cfg) {
        set_error("null config");
        return AGGREKIN_ERR_CONFIG;
    }
    try {
        const aggrekin::RunOutcome out =
            aggrekin::run(cfg->cfg, output_dir ? output_dir : "");
        set_error(out.message);
        return out.exit_code == 0 ? AGGREKIN_OK : AGGREKIN_ERR_INVARIANT;
    } catch (...) {
        return map_exception();
    }
}

aggrekin_status aggrekin_study(const aggrekin_config* cfg, const char* kind,
                               const char* output_dir)
{
    if (!cfg || !kind) {
        set_error("null argument");
        return AGGREKIN_ERR_CONFIG;
    }
    try {
        const aggrekin::RunOutcome out =
            aggrekin::study(cfg->cfg, kind, output_dir ? output_dir : "");
        set_error(out.message);
        return out.exit_code == 0 ? AGGREKIN_OK : AGGREKIN_ERR_INVARIANT;
    } catch (...) {
        return map_exception();
    }
}

size_t aggrekin_preset_count(void) { return aggrekin::preset_names().size(); }

const char* aggrekin_preset_name(size_t index)
{
    const auto& names = aggrekin::preset_names();
    if (index >= names.size()) return nullptr;
    return names[index].c_str();
}

size_t aggrekin_preset_describe(const char* name, char* buf, size_t size)
{
    if (!name) return copy_out("", buf, size);
    try {
        return copy_out(aggrekin::preset_describe(name), buf, size);
    } catch (const std::exception& e) {
        set_error(e.what());
        return copy_out("", buf, size);
    }
}

} // extern "C"
