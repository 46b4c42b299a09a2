from planarflow.cli import main

main()
