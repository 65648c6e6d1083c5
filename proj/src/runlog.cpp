#include "loreseval/runlog.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <cstdio>

#include "loreseval/error.hpp"

namespace loreseval::runlog {

namespace {

std::string utc_timestamp() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const std::time_t seconds = system_clock::to_time_t(now);
  const auto millis = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&seconds, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<int>(millis));
  return buf;
}

class FileHandle {
 public:
  explicit FileHandle(int fd) : fd_(fd) {}
  ~FileHandle() {
    if (fd_ >= 0) ::close(fd_);
  }
  FileHandle(const FileHandle&) = delete;
  FileHandle& operator=(const FileHandle&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

}  // namespace

std::filesystem::path default_log_dir() {
  if (const char* env = std::getenv(kLogDirEnv); env && *env) return env;
  return "logs";
}

std::filesystem::path log_run(const std::filesystem::path& dir, const std::string& command,
                              const nlohmann::json& report) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create log dir " + dir.string());

  const auto path = dir / (command + ".jsonl");
  const nlohmann::json entry = {
      {"timestamp", utc_timestamp()}, {"command", command}, {"report", report}};
  const std::string line = entry.dump() + '\n';

  FileHandle file(::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644));
  if (file.get() < 0) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string() + ": " + std::strerror(errno));
  }
  if (::flock(file.get(), LOCK_EX) != 0) {
    throw Error(ErrorCode::IoError, "cannot lock " + path.string());
  }
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(file.get(), line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::flock(file.get(), LOCK_UN);
      throw Error(ErrorCode::IoError, "write failed: " + path.string());
    }
    written += static_cast<std::size_t>(n);
  }
  ::flock(file.get(), LOCK_UN);
  return path;
}

}  // namespace loreseval::runlog
