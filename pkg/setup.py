#!/usr/bin/env python3

"""
FOWL Setup Script
Development environment setup: virtualenv, dependencies, .env and prover check
"""

import os
import shutil
import subprocess
import sys
from pathlib import Path

BACKEND = Path("backend")


def run_command(command, check=True):
    """Run a command and return the result"""
    print(f"🔧 Running: {command}")
    try:
        result = subprocess.run(command, shell=True, check=check, capture_output=True, text=True)
        if result.stdout:
            print(result.stdout)
        return result
    except subprocess.CalledProcessError as e:
        print(f"❌ Error running command: {e}")
        if e.stderr:
            print(f"Error output: {e.stderr}")
        return None


def check_requirements():
    """Check if required software is installed"""
    print("🔍 Checking requirements...")

    if sys.version_info < (3, 9):
        print(f"❌ Python 3.9+ required, found {sys.version.split()[0]}")
        return False

    result = run_command(f"{sys.executable} -m pip --version", check=False)
    if result is None or result.returncode != 0:
        print("❌ pip not available")
        return False

    print("✅ python and pip found")
    return True


def setup_virtual_environment():
    """Create the virtual environment and install backend/requirements.txt"""
    print("🐍 Setting up virtual environment...")

    venv_path = BACKEND / "venv"
    if not venv_path.exists():
        run_command(f"{sys.executable} -m venv {venv_path}")
    else:
        print("✅ Virtual environment already exists")

    if sys.platform == "win32":
        pip_path = venv_path / "Scripts" / "pip.exe"
        activate_script = venv_path / "Scripts" / "activate.bat"
    else:
        pip_path = venv_path / "bin" / "pip"
        activate_script = venv_path / "bin" / "activate"

    if pip_path.exists():
        print("📦 Installing Python dependencies...")
        run_command(f"{pip_path} install -r {BACKEND / 'requirements.txt'}")

    print("✅ Virtual environment ready!")
    if sys.platform == "win32":
        print(f"To activate: {activate_script}")
    else:
        print(f"To activate: source {activate_script}")


def setup_environment_file():
    """Create .env file from template"""
    print("⚙️ Setting up environment configuration...")

    env_example = BACKEND / ".env.example"
    env_file = BACKEND / ".env"

    if not env_file.exists() and env_example.exists():
        print("📝 Creating .env file from template...")
        env_file.write_text(env_example.read_text(encoding="utf-8"), encoding="utf-8")
        print("✅ .env file created!")
    else:
        print("✅ .env file already exists")


def read_prover_name():
    """FOWL_PROVER from the environment or backend/.env, else the default"""
    prover = os.environ.get("FOWL_PROVER")
    env_file = BACKEND / ".env"
    if prover is None and env_file.exists():
        for line in env_file.read_text(encoding="utf-8").splitlines():
            key, _, value = line.partition("=")
            if key.strip() == "FOWL_PROVER":
                prover = value.strip()
    return prover or "vampire"


def check_prover():
    """Check that the configured prover is on PATH"""
    print("🧮 Checking theorem prover...")
    prover = read_prover_name()
    if shutil.which(prover):
        print(f"✅ {prover} found")
        return True
    print(f"⚠️ {prover} not found on PATH; prover-marked tests will be skipped")
    return False


def main():
    """Main setup function"""
    print("🚀 FOWL Setup Script")
    print("=" * 50)

    if not BACKEND.exists():
        print("❌ Please run this script from the project root directory")
        sys.exit(1)

    if not check_requirements():
        print("❌ Please install missing requirements and run again")
        sys.exit(1)

    setup_virtual_environment()
    setup_environment_file()
    has_prover = check_prover()

    print("\n🎉 Setup complete!")
    print("=" * 50)
    print("📋 Next steps:")
    if not has_prover:
        print("0. Install Vampire or E and set FOWL_PROVER in backend/.env")
    print("1. Run the tests: cd backend && pytest")
    print("2. Translate an ontology: cd backend && python -m fowl translate tests/fixtures/fish.ofn")

    print("\n📖 For detailed instructions, see README.md")


if __name__ == "__main__":
    main()
