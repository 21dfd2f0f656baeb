#!/usr/bin/env python3
"""Generates the fixture corpus under fixtures/corpus.

The corpus imitates GitHub bug reports and project documentation from Java
projects: prose written by reporters mixed with pasted code, stack traces,
build and log output, JSON/XML/YAML configuration and shell sessions. Most
artifacts are wrapped in fenced blocks; some reporters paste them raw.

Every generated line carries its true class, written to truth.jsonl, so the
corpus doubles as a hand-labeled validation set.

Output is fully determined by the seed. Re-run with:

    python3 tools/make_fixtures.py fixtures/corpus
"""

import json
import random
import sys
from pathlib import Path

SEED = 20211015

NL = "nl"
ART = "artifact"

PROJECTS = {
    "jsonkit": ("com.acme.jsonkit", ["JsonParser", "JsonWriter", "TokenStream", "ObjectMapper", "NodeFactory"]),
    "queueworks": ("io.queueworks", ["BrokerClient", "MessageListener", "RetryPolicy", "ConsumerGroup", "Dispatcher"]),
    "gridview": ("org.gridview.ui", ["GridPanel", "CellRenderer", "ColumnModel", "SelectionModel", "ScrollPane"]),
    "tinyorm": ("net.tinyorm", ["SessionFactory", "QueryBuilder", "EntityManager", "ConnectionPool", "SchemaMigrator"]),
    "httpmesh": ("dev.httpmesh", ["HttpClient", "RequestBuilder", "ConnectionManager", "ResponseHandler", "TlsConfig"]),
    "batchflow": ("com.batchflow.core", ["JobRunner", "StepExecutor", "ChunkReader", "ItemWriter", "JobRepository"]),
    "imgtools": ("org.imgtools", ["ImageReader", "ColorSpace", "TiffDecoder", "PixelBuffer", "ScaleFilter"]),
    "cachelane": ("io.cachelane", ["CacheManager", "EvictionPolicy", "RegionStore", "CacheLoader", "StatsCollector"]),
}

EXCEPTIONS = [
    "java.lang.NullPointerException", "java.lang.IllegalStateException", "java.lang.IllegalArgumentException",
    "java.io.IOException", "java.util.ConcurrentModificationException", "java.lang.ClassCastException",
    "java.lang.ArrayIndexOutOfBoundsException", "java.net.SocketTimeoutException",
    "java.lang.UnsupportedOperationException", "java.sql.SQLException", "java.lang.OutOfMemoryError",
    "java.util.NoSuchElementException", "java.lang.NumberFormatException",
]

METHODS = ["parse", "read", "write", "close", "flush", "resolve", "dispatch", "handle", "execute", "load",
           "render", "apply", "commit", "decode", "scale", "evict", "lookup", "connect", "open", "process",
           "readValue", "nextToken", "getColumn", "findById", "onMessage", "doFilter", "invoke", "run",
           "buildRequest", "toString", "compareTo", "initialize", "validate", "serialize", "refresh"]

FIELDS = ["count", "buffer", "config", "timeout", "retries", "name", "value", "offset", "index", "result",
          "cache", "session", "reader", "writer", "listener", "mapper", "node", "entity", "request", "response"]

TYPES = ["String", "int", "long", "boolean", "List<String>", "Map<String, Object>", "byte[]", "Object",
         "Optional<String>", "double", "Duration", "Path", "File"]

OS_NAMES = ["Ubuntu 20.04", "Windows 10", "macOS 11.2", "Debian 10", "CentOS 7", "Windows Server 2019",
            "Fedora 33", "macOS 10.15.7", "Arch Linux", "Alpine 3.13"]

JAVA_VERSIONS = ["1.8.0_252", "11.0.9", "11.0.10", "15.0.2", "1.8.0_282", "16", "14.0.1", "17-ea"]

# ---------------------------------------------------------------- prose --

SUBJECTS = ["the parser", "the client", "the grid", "this method", "the build", "our service", "the cache",
            "the importer", "the latest release", "the new version", "the reader", "the listener", "the job",
            "the decoder", "the connection pool", "the migration", "the test suite", "the example",
            "the application", "the library", "the plugin", "the scheduler", "the UI", "the exporter"]

VERBS_FAIL = ["fails", "crashes", "hangs", "throws an exception", "stops responding", "returns the wrong value",
              "ignores the setting", "leaks memory", "runs out of memory", "produces corrupted output",
              "times out", "deadlocks", "drops messages", "skips the last row", "reports an error",
              "behaves differently", "breaks", "silently swallows the error", "returns null",
              "loops forever", "becomes very slow"]

CONDITIONS = ["when the input is empty", "after upgrading to the latest version", "on Windows",
              "under heavy load", "if the file contains unicode characters", "when running in a container",
              "with the default configuration", "after a few hours", "when two threads access it",
              "on the second call", "if the connection is reset", "when the value is negative",
              "during shutdown", "when the list is modified", "with large files", "on first startup",
              "in our CI pipeline", "when compiled with Java 11", "in production only", "from time to time",
              "for some of our users", "when the timeout is set to zero", "with nested objects",
              "right after a restart", "whenever the cache is full"]

OPENERS = ["I noticed that", "It seems that", "We observed that", "After some debugging I found that",
           "Unfortunately", "As far as I can tell", "Since yesterday", "In our setup", "I believe that",
           "Apparently", "Interestingly", "Somehow", "For some reason", "Today I realized that",
           "When I tried it again", "Our QA team reported that", "A colleague found that"]

FOLLOWUPS = [
    "This used to work in the previous release.",
    "Is there a workaround for this?",
    "Any help would be appreciated.",
    "Please let me know if you need more information.",
    "I can provide a minimal project if that helps.",
    "I am not sure whether this is a bug or a configuration problem.",
    "It only happens occasionally, which makes it hard to reproduce.",
    "Thanks for the great library!",
    "I would be happy to submit a pull request.",
    "We had to roll back to the old version for now.",
    "The documentation does not mention this behaviour.",
    "I could not find an existing issue for this.",
    "This is blocking our release, so any pointers are welcome.",
    "Let me know if I should test a snapshot build.",
    "It would be great if this could be fixed in the next version.",
    "I attached the full output below.",
    "Here is the relevant part of the log.",
    "See the snippet below for a minimal example.",
    "The stack trace is below.",
    "I have no idea why this happens.",
    "Maybe I am missing something obvious here?",
    "Restarting the application makes the problem go away for a while.",
    "Reverting the last commit fixes it for me.",
    "The same code works fine on Linux.",
    "We see this on every build.",
    "Thanks in advance!",
    "Did anyone else run into this?",
    "Happy to help with testing.",
]

EXPECTATIONS = [
    "I expected the method to return an empty list instead of throwing.",
    "It should simply skip the invalid entry and continue.",
    "The value should be written exactly as it was read.",
    "I would expect a clear error message here.",
    "The call should time out after the configured duration.",
    "All rows should be visible after scrolling down.",
    "The listener should be notified exactly once.",
    "Closing the client should release all connections.",
    "The cache should evict the oldest entry first.",
    "The build should succeed like it did before the upgrade.",
    "The decoder should handle files with multiple pages.",
    "Both threads should see the updated value.",
    "The migration should be applied only once.",
    "The job should resume from the last checkpoint.",
    "Retries should stop after the configured limit.",
]

HEADINGS_ISSUE = ["### Describe the bug", "### To Reproduce", "### Expected behavior", "### Actual behavior",
                  "### Steps to reproduce", "### Environment", "### Additional context", "**Describe the bug**",
                  "**Expected behavior**", "**To Reproduce**", "## Description", "## Stack trace",
                  "## Workaround", "### Logs", "### Possible fix", "#### Details"]

STEP_TEMPLATES = [
    "Create a new {cls} with the default settings",
    "Call `{meth}()` with an empty argument",
    "Start the application and open the settings page",
    "Run the build with `mvn clean install`",
    "Wait for about ten seconds",
    "Send two requests at the same time",
    "Restart the server and repeat the request",
    "Load the attached sample file",
    "Change the timeout to a small value",
    "Scroll to the bottom of the table",
    "Close the connection while a request is running",
    "Enable debug logging and check the output",
    "Use the snippet below in a fresh project",
    "Upgrade the dependency to the latest version",
    "See error",
]

QUOTE_LINES = [
    "> Could you share the exact version you are using?",
    "> I think this was fixed in the latest snapshot.",
    "> Does this also happen with the default configuration?",
    "> Thanks for the report, we will take a look.",
    "> Can you try again with debug logging enabled?",
]


def sentence(rng, cls, meth):
    kind = rng.randrange(10)
    subj = rng.choice(SUBJECTS)
    if kind == 0:
        return f"{rng.choice(OPENERS)} {subj} {rng.choice(VERBS_FAIL)} {rng.choice(CONDITIONS)}."
    if kind == 1:
        return f"When I call `{cls}.{meth}()` {rng.choice(CONDITIONS)}, it {rng.choice(VERBS_FAIL)}."
    if kind == 2:
        return f"The {cls} {rng.choice(VERBS_FAIL)} {rng.choice(CONDITIONS)}."
    if kind == 3:
        return rng.choice(FOLLOWUPS)
    if kind == 4:
        return rng.choice(EXPECTATIONS)
    if kind == 5:
        return f"{rng.choice(OPENERS)} {meth} in {cls} {rng.choice(VERBS_FAIL)}, but only {rng.choice(CONDITIONS)}."
    if kind == 6:
        return (f"Our code calls {meth} on a shared {cls} instance and {subj} {rng.choice(VERBS_FAIL)} "
                f"{rng.choice(CONDITIONS)}.")
    if kind == 7:
        return f"Why does {subj} {rng.choice(['fail', 'crash', 'hang', 'stop', 'break'])} {rng.choice(CONDITIONS)}?"
    if kind == 8:
        return f"I tried version {rng.randint(1, 4)}.{rng.randint(0, 12)}.{rng.randint(0, 9)} and {subj} still {rng.choice(VERBS_FAIL)}."
    return f"{rng.choice(OPENERS)} the problem is related to the {cls} and how it handles {rng.choice(FIELDS)}."


def paragraph(rng, cls, meth, n=None):
    """Prose lines; long paragraphs are sometimes hard-wrapped."""
    n = n or rng.randint(1, 3)
    text = " ".join(sentence(rng, cls, meth) for _ in range(n))
    if len(text) > 90 and rng.random() < 0.4:
        words, lines, cur = text.split(" "), [], ""
        for w in words:
            if cur and len(cur) + len(w) + 1 > 72:
                lines.append(cur)
                cur = w
            else:
                cur = f"{cur} {w}" if cur else w
        lines.append(cur)
        return [(l, NL) for l in lines]
    return [(text, NL)]


def steps(rng, cls, meth):
    out = []
    numbered = rng.random() < 0.6
    for i, tmpl in enumerate(rng.sample(STEP_TEMPLATES, rng.randint(2, 4)), start=1):
        bullet = f"{i}." if numbered else rng.choice(["-", "*"])
        out.append((f"{bullet} {tmpl.format(cls=cls, meth=meth)}", NL))
    return out


# ------------------------------------------------------------- artifacts --

def java_snippet(rng, pkg, cls):
    out = []
    if rng.random() < 0.4:
        out.append(f"package {pkg}.example;")
        out.append("")
        for imp in rng.sample(["java.util.List", "java.util.Map", "java.io.IOException",
                               f"{pkg}.{cls}", "java.time.Duration", "java.util.concurrent.Executors"],
                              rng.randint(1, 3)):
            out.append(f"import {imp};")
        out.append("")
    name = rng.choice(["Example", "Repro", "Main", "BugDemo", "Sample", cls + "Test"])
    if rng.random() < 0.3:
        out.append(rng.choice(["@Test", "@Override", "@SuppressWarnings(\"unchecked\")", "@RunWith(JUnit4.class)"]))
    out.append(f"public class {name} {{")
    for _ in range(rng.randint(0, 2)):
        out.append(f"    private {rng.choice(TYPES)} {rng.choice(FIELDS)};")
    for _ in range(rng.randint(1, 2)):
        ret = rng.choice(["void", "String", "int", "boolean", "List<String>"])
        meth = rng.choice(METHODS)
        out.append("")
        out.append(f"    public {ret} {meth}({rng.choice(TYPES)} {rng.choice(FIELDS)}) throws IOException {{")
        for _ in range(rng.randint(2, 5)):
            out.append("        " + java_statement(rng, cls))
        if rng.random() < 0.4:
            out.append(f"        for (int i = 0; i < {rng.choice(FIELDS)}.size(); i++) {{")
            out.append(f"            {rng.choice(FIELDS)}.add(i);")
            out.append("        }")
        if rng.random() < 0.3:
            out.append("        try {")
            out.append(f"            {rng.choice(FIELDS)}.{rng.choice(METHODS)}();")
            out.append("        } catch (IOException e) {")
            out.append("            e.printStackTrace();")
            out.append("        }")
        if ret != "void":
            out.append(f"        return {rng.choice(['null', 'result', 'false', '0', 'list'])};")
        out.append("    }")
    out.append("}")
    return [(l, ART) for l in out]


def java_statement(rng, cls):
    f1, f2 = rng.choice(FIELDS), rng.choice(FIELDS)
    return rng.choice([
        f"{cls} {f1} = new {cls}();",
        f"{f1}.{rng.choice(METHODS)}({f2});",
        f"String {f1} = {f2}.{rng.choice(METHODS)}(\"{rng.choice(['test', 'foo', 'a,b', 'UTF-8'])}\");",
        f"int {f1} = {rng.randint(0, 500)};",
        f"if ({f1} == null) {{ throw new IllegalStateException(\"{f1} is null\"); }}",
        f"System.out.println({f1});",
        f"// {rng.choice(['this line throws', 'works fine', 'TODO: remove', 'fails here', 'see above'])}",
        f"{f1} = {f2}.{rng.choice(METHODS)}();",
        f"List<String> {f1} = new ArrayList<>();",
        f"Map<String, Object> {f1} = {cls}.{rng.choice(METHODS)}({f2}, {rng.randint(1, 99)});",
        f"assertEquals({rng.randint(0, 9)}, {f1}.size());",
        f"{f1}.set{f2.capitalize()}(Duration.ofSeconds({rng.randint(1, 60)}));",
    ])


def stack_trace(rng, pkg, classes, raw=False):
    exc = rng.choice(EXCEPTIONS)
    msg = rng.choice(["", ": null", ": Stream closed", ": Index 3 out of bounds for length 3",
                      ": Connection reset", ": Unexpected character ('}' (code 125))",
                      ": Cannot invoke \"String.length()\" because \"value\" is null", ": Read timed out"])
    out = []
    if rng.random() < 0.3:
        out.append(f"Exception in thread \"{rng.choice(['main', 'pool-1-thread-2', 'worker-3'])}\" {exc}{msg}")
    else:
        out.append(f"{exc}{msg}")
    indent = "\t" if rng.random() < 0.6 else "    "
    if raw and rng.random() < 0.5:
        indent = ""
    for _ in range(rng.randint(3, 9)):
        c = rng.choice(classes)
        sub = rng.choice(["", ".internal", ".impl", ".io"])
        out.append(f"{indent}at {pkg}{sub}.{c}.{rng.choice(METHODS)}({c}.java:{rng.randint(12, 900)})")
    if rng.random() < 0.4:
        out.append(f"{indent}at java.base/java.lang.Thread.run(Thread.java:{rng.randint(700, 900)})")
    if rng.random() < 0.5:
        out.append(f"Caused by: {rng.choice(EXCEPTIONS)}: {rng.choice(['null', 'Broken pipe', 'timeout'])}")
        for _ in range(rng.randint(1, 4)):
            c = rng.choice(classes)
            out.append(f"{indent}at {pkg}.{c}.{rng.choice(METHODS)}({c}.java:{rng.randint(12, 900)})")
        out.append(f"{indent}... {rng.randint(3, 40)} more")
    return [(l, ART) for l in out]


def log_block(rng, pkg, classes):
    fmt = rng.randrange(4)
    out = []
    msgs = ["Starting {c} with {n} workers", "Connection established to localhost:{p}",
            "Retrying request ({n}/5)", "Loaded {n} entries in {n}ms", "Shutting down {c}",
            "Failed to process message id={n}", "Cache miss for key user:{n}",
            "Scheduled job {c} finished with status FAILED", "Received response code {p}",
            "Opening session {n} for tenant default", "Flushing {n} pending writes"]
    for _ in range(rng.randint(3, 10)):
        c = rng.choice(classes)
        level = rng.choice(["INFO", "INFO", "DEBUG", "WARN", "ERROR"])
        msg = rng.choice(msgs).format(c=c, n=rng.randint(1, 999), p=rng.choice([8080, 443, 5672, 6379, 500, 404]))
        t = f"{rng.randint(0, 23):02d}:{rng.randint(0, 59):02d}:{rng.randint(0, 59):02d}"
        if fmt == 0:
            out.append(f"2021-0{rng.randint(1, 9)}-{rng.randint(10, 28)} {t}.{rng.randint(100, 999)} {level:5} "
                       f"{rng.randint(1000, 9999)} --- [{rng.choice(['main', 'nio-8080-exec-1', 'task-2'])}] "
                       f"{pkg}.{c} : {msg}")
        elif fmt == 1:
            out.append(f"{t}.{rng.randint(100, 999)} [{rng.choice(['main', 'worker-1', 'pool-2-thread-1'])}] "
                       f"{level} {pkg}.{c} - {msg}")
        elif fmt == 2:
            out.append(f"[{level}] {msg}")
        else:
            out.append(f"{rng.randint(10, 28)}-Mar-2021 {t}.{rng.randint(100, 999)} {rng.choice(['INFO', 'SEVERE', 'WARNING'])} "
                       f"[{rng.choice(['main', 'http-nio-8080-exec-3'])}] {pkg}.{c}.{rng.choice(METHODS)} {msg}")
    return [(l, ART) for l in out]


def json_block(rng):
    out = ["{"]
    keys = rng.sample(["id", "name", "type", "enabled", "timeout", "retries", "tags", "endpoint",
                       "version", "items", "status", "createdAt", "payload"], rng.randint(3, 7))
    for i, k in enumerate(keys):
        comma = "," if i < len(keys) - 1 else ""
        v = rng.choice([f"\"{rng.choice(['abc', 'default', 'v2', 'localhost:9200'])}\"", str(rng.randint(0, 999)),
                        "true", "false", "null"])
        if rng.random() < 0.2:
            out.append(f"  \"{k}\": {{")
            out.append(f"    \"value\": {v}")
            out.append(f"  }}{comma}")
        elif rng.random() < 0.15:
            out.append(f"  \"{k}\": [1, 2, 3]{comma}")
        else:
            out.append(f"  \"{k}\": {v}{comma}")
    out.append("}")
    return [(l, ART) for l in out]


def xml_block(rng, pkg):
    kind = rng.randrange(3)
    if kind == 0:
        out = ["<dependency>", f"    <groupId>{pkg}</groupId>",
               f"    <artifactId>{pkg.split('.')[-1]}-core</artifactId>",
               f"    <version>{rng.randint(1, 4)}.{rng.randint(0, 9)}.{rng.randint(0, 9)}</version>", "</dependency>"]
    elif kind == 1:
        out = ["<configuration>", "  <appender name=\"STDOUT\" class=\"ch.qos.logback.core.ConsoleAppender\">",
               "    <encoder>", "      <pattern>%d{HH:mm:ss.SSS} [%thread] %-5level %logger{36} - %msg%n</pattern>",
               "    </encoder>", "  </appender>", f"  <logger name=\"{pkg}\" level=\"DEBUG\"/>",
               "  <root level=\"INFO\">", "    <appender-ref ref=\"STDOUT\" />", "  </root>", "</configuration>"]
    else:
        out = ["<bean id=\"dataSource\" class=\"org.apache.commons.dbcp2.BasicDataSource\">",
               "    <property name=\"url\" value=\"jdbc:h2:mem:test\"/>",
               "    <property name=\"maxTotal\" value=\"20\"/>", "</bean>"]
    return [(l, ART) for l in out]


def shell_session(rng, pkg):
    out = []
    cmd = rng.choice(["mvn clean install", "./gradlew build --stacktrace", "java -jar target/app.jar",
                      "mvn -v", "java -version", "docker run --rm -p 8080:8080 app:latest"])
    out.append(f"$ {cmd}")
    if cmd.startswith("mvn clean"):
        out += ["[INFO] Scanning for projects...", "[INFO] ------------------------------------------------------------------------",
                f"[INFO] Building {pkg.split('.')[-1]} 1.{rng.randint(0, 9)}.0-SNAPSHOT",
                "[ERROR] Failed to execute goal org.apache.maven.plugins:maven-compiler-plugin:3.8.1:compile (default-compile) on project core: Compilation failure",
                f"[ERROR] /home/user/src/main/java/{pkg.replace('.', '/')}/Main.java:[{rng.randint(10, 99)},{rng.randint(1, 40)}] cannot find symbol",
                "[INFO] BUILD FAILURE"]
    elif cmd.startswith("./gradlew"):
        out += ["> Task :core:compileJava FAILED", "", "FAILURE: Build failed with an exception.", "",
                "* What went wrong:", "Execution failed for task ':core:compileJava'.",
                "> Compilation failed; see the compiler error output for details.", "",
                f"BUILD FAILED in {rng.randint(2, 59)}s", f"{rng.randint(2, 9)} actionable tasks: {rng.randint(1, 9)} executed"]
    elif cmd == "java -version" or cmd == "mvn -v":
        v = rng.choice(JAVA_VERSIONS)
        out += [f"openjdk version \"{v}\" 2020-10-20", f"OpenJDK Runtime Environment (build {v}+11)",
                f"OpenJDK 64-Bit Server VM (build {v}+11, mixed mode)"]
    else:
        out += ["Error: Unable to access jarfile target/app.jar"] if "jar" in cmd else \
               ["Unable to find image 'app:latest' locally", "docker: Error response from daemon: pull access denied."]
    return [(l, ART) for l in out]


def yaml_block(rng, pkg):
    out = ["spring:", "  datasource:", f"    url: jdbc:postgresql://localhost:5432/{rng.choice(['app', 'test', 'orders'])}",
           "    username: postgres", f"    hikari:", f"      maximum-pool-size: {rng.randint(2, 50)}",
           "logging:", "  level:", f"    {pkg}: DEBUG"]
    return [(l, ART) for l in out[: rng.randint(4, len(out))]]


def properties_block(rng, pkg):
    out = [f"server.port={rng.choice([8080, 9090, 8443])}", f"{pkg}.timeout={rng.randint(1, 60)}s",
           f"{pkg}.retries={rng.randint(0, 9)}", "spring.jpa.hibernate.ddl-auto=update",
           "logging.level.root=INFO", "cache.enabled=true"]
    return [(l, ART) for l in rng.sample(out, rng.randint(2, 5))]


def gradle_block(rng, pkg):
    out = ["dependencies {", f"    implementation '{pkg}:core:{rng.randint(1, 4)}.{rng.randint(0, 9)}.0'",
           "    implementation 'com.google.guava:guava:30.1-jre'",
           "    testImplementation 'junit:junit:4.13.2'", "}"]
    return [(l, ART) for l in out]


def sql_block(rng):
    out = [rng.choice(["SELECT id, name, status", "SELECT *", "SELECT count(*)"]),
           f"FROM {rng.choice(['users', 'orders', 'jobs', 'events'])} u",
           f"WHERE u.status = '{rng.choice(['ACTIVE', 'FAILED', 'NEW'])}'",
           f"ORDER BY u.created_at DESC LIMIT {rng.randint(1, 100)}"]
    return [(l, ART) for l in out]


def diff_block(rng, cls):
    m = rng.choice(METHODS)
    out = [f"--- a/src/main/java/{cls}.java", f"+++ b/src/main/java/{cls}.java",
           f"@@ -{rng.randint(10, 300)},7 +{rng.randint(10, 300)},8 @@ public class {cls} {{",
           f"     public void {m}() {{", "-        return null;", f"+        if (value == null) {{",
           "+            return Optional.empty();", "+        }"]
    return [(l, ART) for l in out]


def artifact(rng, pkg, classes, raw=False):
    cls = rng.choice(classes)
    kind = rng.choices(
        ["java", "trace", "log", "json", "xml", "shell", "yaml", "props", "gradle", "sql", "diff"],
        weights=[22, 20, 14, 8, 8, 8, 5, 4, 4, 3, 4])[0]
    if kind == "java":
        return "java", java_snippet(rng, pkg, cls)
    if kind == "trace":
        return "", stack_trace(rng, pkg, classes, raw)
    if kind == "log":
        return rng.choice(["", "text", "log"]), log_block(rng, pkg, classes)
    if kind == "json":
        return "json", json_block(rng)
    if kind == "xml":
        return "xml", xml_block(rng, pkg)
    if kind == "shell":
        return rng.choice(["", "bash", "shell", "console"]), shell_session(rng, pkg)
    if kind == "yaml":
        return "yaml", yaml_block(rng, pkg)
    if kind == "props":
        return "properties", properties_block(rng, pkg)
    if kind == "gradle":
        return "groovy", gradle_block(rng, pkg)
    if kind == "sql":
        return "sql", sql_block(rng)
    return "diff", diff_block(rng, cls)


def fenced(rng, block, lang):
    fence = "~~~" if rng.random() < 0.08 else "```"
    # blank lines inside a block are not labeled
    body = [(t, lab if t.strip() else NL) for t, lab in block]
    return [(fence + lang, ART)] + body + [(fence, ART)]


def environment(rng):
    out = []
    if rng.random() < 0.5:
        out.append((f"- OS: {rng.choice(OS_NAMES)}", NL))
        out.append((f"- Java version: {rng.choice(JAVA_VERSIONS)}", NL))
        out.append((f"- Library version: {rng.randint(1, 4)}.{rng.randint(0, 12)}.{rng.randint(0, 9)}", NL))
    else:
        out.append(("| Component | Version |", ART))
        out.append(("|-----------|---------|", ART))
        out.append((f"| JDK | {rng.choice(JAVA_VERSIONS)} |", ART))
        out.append((f"| OS | {rng.choice(OS_NAMES)} |", ART))
    return out


# --------------------------------------------------------------- issues --

def issue(rng, project, number, style):
    pkg, classes = PROJECTS[project]
    cls, meth = rng.choice(classes), rng.choice(METHODS)
    lines = []

    def blank():
        lines.append(("", NL))

    def add(seq):
        lines.extend(seq)

    templated = rng.random() < 0.5
    n_blocks = rng.randint(1, 3)
    for part in range(n_blocks + 1):
        if templated and part < len(HEADINGS_ISSUE):
            add([(rng.choice(HEADINGS_ISSUE), NL)])
        add(paragraph(rng, cls, meth))
        if rng.random() < 0.4:
            blank()
            add(paragraph(rng, cls, meth))
        if part == 0 and rng.random() < 0.5:
            blank()
            add(steps(rng, cls, meth))
        blank()
        if part == n_blocks:
            break
        lang, block = artifact(rng, pkg, classes, raw=style != "fenced")
        if style == "fenced":
            add(fenced(rng, block, lang))
        elif style == "mixed":
            # one block pasted without a fence
            if part == 0:
                add(block)
            else:
                add(fenced(rng, block, lang))
        elif style == "indented":
            add([("    " + t if t else t, lab) for t, lab in block])
        elif style == "raw":
            add(block)
        blank()
    if rng.random() < 0.35:
        add(environment(rng))
        blank()
    if rng.random() < 0.2:
        add([(rng.choice(QUOTE_LINES), NL)])
        blank()
        add(paragraph(rng, cls, meth, 1))
        blank()
    if rng.random() < 0.2:
        add([(f"https://github.com/acme/{project}/issues/{rng.randint(1, number + 50)}", ART)])
        blank()
    if rng.random() < 0.1:
        add([(f"![screenshot](https://user-images.githubusercontent.com/{rng.randint(1000, 99999)}/shot.png)", ART)])
        blank()
    add([(rng.choice(FOLLOWUPS), NL)])
    return lines


def prose_issue(rng, project):
    pkg, classes = PROJECTS[project]
    cls, meth = rng.choice(classes), rng.choice(METHODS)
    lines = []
    for _ in range(rng.randint(2, 4)):
        lines += paragraph(rng, cls, meth, rng.randint(1, 3))
        lines.append(("", NL))
    if rng.random() < 0.4:
        lines += steps(rng, cls, meth)
        lines.append(("", NL))
    lines.append((rng.choice(FOLLOWUPS), NL))
    return lines


# ----------------------------------------------------------------- docs --

def doc_file(rng, project, name):
    pkg, classes = PROJECTS[project]
    cls = rng.choice(classes)
    out = [(f"# {project} {name.replace('.md', '').replace('_', ' ').title()}", NL), ("", NL)]
    if rng.random() < 0.6:
        out += [(f"![Build Status](https://ci.example.org/{project}/badge.svg)", ART),
                (f"[![Maven Central](https://img.shields.io/maven-central/v/{pkg}/core.svg)](https://search.maven.org/)", ART), ("", NL)]
    intros = [
        f"{project} is a small library for Java applications that focuses on predictable behaviour.",
        f"This guide explains how to configure the {cls} and what the individual options mean.",
        "The examples below assume Java 11 or newer, but most of them also work on Java 8.",
        "If you are upgrading from an older release, read the migration notes first.",
        f"Most applications only need the {cls}, which is created once and shared between threads.",
        "All public classes are thread safe unless stated otherwise in their documentation.",
        "Contributions are welcome, please open an issue before starting larger changes.",
        "The default settings are tuned for typical server workloads.",
        "Each option can also be set through a system property, which is useful in tests.",
        "Errors are reported through exceptions that carry the original cause.",
        f"You can use the {cls} directly or let the framework create it for you.",
        "Keep in mind that closing the client also closes every open connection.",
        "Note that the API may still change before the first stable release.",
        "For questions, use the discussion forum rather than the issue tracker.",
        "Performance numbers depend heavily on the size of the input and the hardware.",
        "The following sections walk through installation, configuration and common pitfalls.",
    ]
    sections = ["## Installation", "## Usage", "## Configuration", "## Logging", "## Troubleshooting",
                "## Building from source", "## Migration notes", "## Examples"]
    for sec in rng.sample(sections, rng.randint(3, 5)):
        out += [(sec, NL), ("", NL)]
        for _ in range(rng.randint(1, 2)):
            k = rng.randint(1, 3)
            out += [(" ".join(rng.sample(intros, k)), NL), ("", NL)]
        if rng.random() < 0.4:
            for item in rng.sample(["Use a single instance per application", "Always close the client",
                                    "Prefer the builder over constructors", "Enable metrics in production",
                                    "Set explicit timeouts", "Avoid blocking inside listeners",
                                    f"Configure the {cls} before first use"], 3):
                out.append((f"- {item}", NL))
            out.append(("", NL))
        if sec == "## Installation":
            out += fenced(rng, xml_block(rng, pkg) if rng.random() < 0.6 else gradle_block(rng, pkg),
                          "xml" if rng.random() < 0.6 else "groovy")
        elif sec == "## Configuration":
            if rng.random() < 0.5:
                out += [("| Option | Default | Description |", ART), ("| --- | --- | --- |", ART),
                        (f"| `{pkg}.timeout` | 30s | Read timeout |", ART),
                        (f"| `{pkg}.retries` | 3 | Retry attempts |", ART)]
            else:
                out += fenced(rng, yaml_block(rng, pkg), "yaml")
        elif sec == "## Logging":
            out += fenced(rng, log_block(rng, pkg, classes), "")
        elif sec == "## Troubleshooting":
            out += fenced(rng, stack_trace(rng, pkg, classes), "")
        elif sec == "## Building from source":
            out += fenced(rng, shell_session(rng, pkg), "bash")
        else:
            if rng.random() < 0.3:
                out += [("    " + t if t else t, lab) for t, lab in java_snippet(rng, pkg, cls)]
            else:
                out += fenced(rng, java_snippet(rng, pkg, cls), "java")
        out.append(("", NL))
    out.append((f"See the [changelog](https://github.com/acme/{project}/releases) for details.", NL))
    out.append(("", NL))
    out.append((f"[Documentation](https://acme.github.io/{project}/)", ART))
    return out


# ----------------------------------------------------------------- main --

def main(out_dir):
    rng = random.Random(SEED)
    out = Path(out_dir)
    (out / "issues").mkdir(parents=True, exist_ok=True)
    (out / "docs").mkdir(parents=True, exist_ok=True)
    truth = []
    records = []
    projects = sorted(PROJECTS)

    styles = ["fenced"] * 44 + ["mixed"] * 6 + ["prose"] * 18 + ["raw"] * 8 + ["indented"] * 4
    rng.shuffle(styles)
    for i, style in enumerate(styles):
        project = projects[i % len(projects)]
        number = 100 + i * 7
        lines = prose_issue(rng, project) if style == "prose" else issue(rng, project, number, style)
        labels = rng.choice([["bug"], ["bug"], ["bug"], ["defect"], ["regression"], ["bug", "ui"], ["bug", "help wanted"]])
        doc_id = f"{project}#{number}"
        eol = "\r\n" if rng.random() < 0.3 else "\n"
        records.append({"id": doc_id, "project": project, "labels": labels,
                        "body": eol.join(t for t, _ in lines) + (eol if rng.random() < 0.5 else "")})
        truth += [(doc_id, n, t, lab) for n, (t, lab) in enumerate(lines) if t.strip()]

    # feature requests are mined only when asked for
    for i in range(6):
        project = projects[i % len(projects)]
        lines = prose_issue(rng, project) + fenced(rng, java_snippet(rng, *PROJECTS[project][:1], PROJECTS[project][1][0]), "java")
        records.append({"id": f"{project}#{900 + i}", "project": project, "labels": ["enhancement"],
                        "body": "\n".join(t for t, _ in lines)})

    with open(out / "issues" / "issues.jsonl", "w", encoding="utf-8", newline="\n") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")

    doc_names = ["README.md", "CONFIGURATION.md", "TROUBLESHOOTING.md"]
    for project in projects:
        for name in rng.sample(doc_names, 2):
            lines = doc_file(rng, project, name)
            path = out / "docs" / project / name
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text("\n".join(t for t, _ in lines) + "\n", encoding="utf-8", newline="\n")
            doc_id = f"doc:{project}/{name}"
            truth += [(doc_id, n, t, lab) for n, (t, lab) in enumerate(lines) if t.strip()]

    with open(out / "truth.jsonl", "w", encoding="utf-8", newline="\n") as f:
        for doc_id, n, t, lab in truth:
            f.write(json.dumps({"text": t, "label": lab, "doc_id": doc_id, "line_no": n,
                                "provenance": "manual"}, ensure_ascii=False) + "\n")

    # issues with linked commits form the test source
    linked = sorted(r["id"] for r in records if rng.random() < 0.2)
    (out / "linked.txt").write_text("\n".join(linked) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "fixtures/corpus")
