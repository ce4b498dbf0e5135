#pragma once
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace hageo::log {

enum class Level { Debug = 0, Info = 1, Warn = 2, Error = 3, Off = 4 };

inline Level threshold() {
    static Level lv = [] {
        const char* e = std::getenv("HAGEO_LOG");
        if (!e) return Level::Warn;
        if (!std::strcmp(e, "debug")) return Level::Debug;
        if (!std::strcmp(e, "info")) return Level::Info;
        if (!std::strcmp(e, "warn")) return Level::Warn;
        if (!std::strcmp(e, "error")) return Level::Error;
        if (!std::strcmp(e, "off")) return Level::Off;
        return Level::Warn;
    }();
    return lv;
}

template <typename... Args>
void emit(Level lv, const char* tag, const char* fmt, Args... args) {
    if (lv < threshold()) return;
    std::fprintf(stderr, "hageo[%s] ", tag);
    std::fprintf(stderr, fmt, args...);
    std::fputc('\n', stderr);
}

template <typename... A> void debug(const char* f, A... a) { emit(Level::Debug, "debug", f, a...); }
template <typename... A> void info(const char* f, A... a)  { emit(Level::Info, "info", f, a...); }
template <typename... A> void warn(const char* f, A... a)  { emit(Level::Warn, "warn", f, a...); }
template <typename... A> void error(const char* f, A... a) { emit(Level::Error, "error", f, a...); }

} // namespace hageo::log
