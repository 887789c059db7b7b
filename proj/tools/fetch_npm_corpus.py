#!/usr/bin/env python3
"""Assemble a real-world Java corpus from npm packages that ship Android sources.

Each package becomes one top-level project directory under OUT, holding only
its .java files, so project-level splits keep a package's code together.
Tarballs are checked against the registry's sha512 integrity string.

    python3 tools/fetch_npm_corpus.py OUT [--jobs 6]
"""

import argparse
import base64
import concurrent.futures
import hashlib
import io
import json
import pathlib
import shutil
import sys
import tarfile
import urllib.request

REGISTRY = "https://registry.npmjs.org"

# Pinned so the corpus is reproducible. Forks of packages already listed
# (e.g. rn-fetch-blob vs react-native-blob-util) are left out to avoid
# near-identical code landing in different splits.
PACKAGES = [
    "@capacitor/android@8.5.2",
    "@react-native-firebase/app@26.4.0",
    "@react-native-google-signin/google-signin@8.0.0",
    "@rnmapbox/maps@10.0.0",
    "@unimodules/core@5.0.0",
    "cordova-android@15.1.0",
    "cordova-plugin-background-mode@0.7.3",
    "cordova-plugin-camera@8.0.0",
    "cordova-plugin-contacts@3.0.1",
    "cordova-plugin-device@3.0.0",
    "cordova-plugin-file-transfer@2.0.0",
    "cordova-plugin-file@8.1.3",
    "cordova-plugin-geolocation@5.0.0",
    "cordova-plugin-inappbrowser@7.0.0",
    "cordova-plugin-local-notification@1.2.3",
    "cordova-plugin-media@7.0.0",
    "cordova-plugin-network-information@3.1.0",
    "cordova-sqlite-storage@7.0.0",
    "expo-av@8.0.0",
    "expo-barcode-scanner@8.0.0",
    "expo-camera@8.0.0",
    "expo-contacts@8.0.0",
    "expo-file-system@8.0.0",
    "expo-gl@8.0.0",
    "expo-image-picker@8.0.0",
    "expo-location@8.0.0",
    "expo-media-library@8.0.0",
    "expo-sensors@8.0.0",
    "expo-sqlite@8.0.0",
    "java@5.0.1",
    "phonegap-plugin-push@2.3.0",
    "react-native-admob@1.3.2",
    "react-native-agora@3.7.0",
    "react-native-audio@4.3.0",
    "react-native-background-fetch@4.4.2",
    "react-native-background-geolocation@5.7.0",
    "react-native-background-upload@6.6.0",
    "react-native-ble-manager@12.5.3",
    "react-native-ble-plx@3.5.1",
    "react-native-blob-util@0.25.1",
    "react-native-bluetooth-escpos-printer@0.0.5",
    "react-native-branch@7.0.0",
    "react-native-callkeep@4.3.16",
    "react-native-camera-kit@8.0.0",
    "react-native-camera@4.2.1",
    "react-native-code-push@9.0.1",
    "react-native-config@1.7.2",
    "react-native-contacts@8.0.10",
    "react-native-device-info@15.0.2",
    "react-native-document-picker@5.2.0",
    "react-native-exception-handler@2.10.10",
    "react-native-fbsdk@3.0.0",
    "react-native-firebase@5.6.0",
    "react-native-fs@2.20.0",
    "react-native-geolocation-service@5.3.1",
    "react-native-gesture-handler@3.3.0",
    "react-native-http-bridge@0.6.1",
    "react-native-image-crop-picker@0.52.0",
    "react-native-image-picker@2.3.4",
    "react-native-image-resizer@1.4.5",
    "react-native-incall-manager@4.3.0",
    "react-native-keep-awake@4.0.0",
    "react-native-linear-gradient@2.8.3",
    "react-native-mail@6.1.1",
    "react-native-maps@0.27.1",
    "react-native-music-control@1.4.1",
    "react-native-navigation@99.99.10",
    "react-native-nfc-manager@3.17.2",
    "react-native-onesignal@3.9.3",
    "react-native-orientation@3.1.3",
    "react-native-pdf@7.0.5",
    "react-native-permissions@2.2.2",
    "react-native-print@0.11.0",
    "react-native-push-notification@8.1.1",
    "react-native-reanimated@4.7.0",
    "react-native-securerandom@1.0.1",
    "react-native-sensors@7.3.6",
    "react-native-share@12.3.1",
    "react-native-signature-capture@0.4.12",
    "react-native-splash-screen@3.3.0",
    "react-native-sqlite-storage@6.0.1",
    "react-native-static-server@0.5.0",
    "react-native-svg@15.15.5",
    "react-native-tcp-socket@6.4.3",
    "react-native-track-player@1.2.7",
    "react-native-udp@4.1.7",
    "react-native-vector-icons@10.3.0",
    "react-native-video@6.19.3",
    "react-native-view-shot@6.0.1",
    "react-native-vlc-media-player@1.0.98",
    "react-native-voice@0.3.0",
    "react-native-webrtc@124.0.8",
    "react-native-webview@16.0.0",
    "react-native-wifi-reborn@4.13.6",
    "react-native-zeroconf@0.14.0",
    "react-native-zip-archive@9.5.1",
    "react-native@0.59.10",
    "realm@6.1.0",
    "tns-android@6.5.0",
]


def split_spec(spec):
    name, _, version = spec.rpartition("@")
    return name, version


def project_dir(name):
    return name.lstrip("@").replace("/", "__")


def fetch(url, timeout):
    with urllib.request.urlopen(url, timeout=timeout) as resp:
        return resp.read()


def install(spec, out, cache, timeout):
    name, version = split_spec(spec)
    dest = out / project_dir(name)
    if dest.exists():
        return spec, sum(1 for _ in dest.rglob("*.java")), "present"
    meta = json.loads(fetch(f"{REGISTRY}/{name}/{version}", timeout))
    tar_path = cache / f"{project_dir(name)}-{version}.tgz"
    if tar_path.exists():
        data = tar_path.read_bytes()
    else:
        data = fetch(meta["dist"]["tarball"], timeout)
    integrity = meta["dist"].get("integrity", "")
    if integrity.startswith("sha512-"):
        digest = base64.b64encode(hashlib.sha512(data).digest()).decode()
        if digest != integrity[len("sha512-"):]:
            raise RuntimeError(f"{spec}: integrity mismatch")
    tar_path.write_bytes(data)

    staging = out / (project_dir(name) + ".partial")
    shutil.rmtree(staging, ignore_errors=True)
    count = 0
    with tarfile.open(fileobj=io.BytesIO(data), mode="r:gz") as tar:
        for member in tar.getmembers():
            if not member.isfile() or not member.name.endswith(".java"):
                continue
            rel = pathlib.PurePosixPath(member.name)
            if rel.is_absolute() or ".." in rel.parts:
                continue
            # drop the tarball's top directory (usually "package/")
            target = staging.joinpath(*rel.parts[1:])
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_bytes(tar.extractfile(member).read())
            count += 1
    if count:
        staging.rename(dest)
    return spec, count, "fetched"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out", type=pathlib.Path)
    ap.add_argument("--cache", type=pathlib.Path, default=pathlib.Path.home() / ".cache" / "obo-npm")
    ap.add_argument("--jobs", type=int, default=6)
    ap.add_argument("--timeout", type=float, default=300)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    args.cache.mkdir(parents=True, exist_ok=True)

    failures = 0
    total = 0
    with concurrent.futures.ThreadPoolExecutor(args.jobs) as pool:
        jobs = [pool.submit(install, s, args.out, args.cache, args.timeout) for s in PACKAGES]
        for job in concurrent.futures.as_completed(jobs):
            try:
                spec, count, how = job.result()
                total += count
                print(f"{spec}\t{count}\t{how}", flush=True)
            except Exception as exc:  # keep going; report at the end
                failures += 1
                print(f"error: {exc}", file=sys.stderr, flush=True)
    print(f"{total} java files, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
